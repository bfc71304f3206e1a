#include "blowuplab/appendix.hpp"
#include "blowuplab/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace blowuplab {

namespace {

struct Term {
  long long c;
  int dn, dl, dlam;
};

#include "appendix_table.inc"

struct Table {
  const Term* t;
  std::size_t n;
};

template <std::size_t K>
Table tab(const Term (&a)[K]) {
  return {a, K};
}

const std::map<std::string, Table>& tables() {
  static const std::map<std::string, Table> m = {
      {"P1", tab(kP1)}, {"P2", tab(kP2)}, {"P3", tab(kP3)}, {"R1", tab(kR1)},
      {"R2", tab(kR2)}, {"R3", tab(kR3)}, {"R4", tab(kR4)}, {"SC_num", tab(kSC_num)},
      {"SE_num", tab(kSE_num)}, {"S_den", tab(kS_den)}, {"D1_num", tab(kD1_num)}, {"D1_den", tab(kD1_den)}};
  return m;
}

const char* kOrder[] = {"P1", "P2", "P3", "R1", "R2", "R3", "R4", "SC_num", "SE_num", "S_den", "D1_num", "D1_den"};

const Table& table(const std::string& name) {
  auto it = tables().find(name);
  if (it == tables().end()) throw ArgumentError("unknown appendix polynomial " + name);
  return it->second;
}

cplx eval(const std::string& name, double n, double ell, cplx lam) {
  const Table& T = table(name);
  cplx pw[16];
  pw[0] = 1.0;
  for (int k = 1; k < 16; ++k) pw[k] = pw[k - 1] * lam;
  cplx s = 0;
  for (std::size_t i = 0; i < T.n; ++i) {
    const Term& t = T.t[i];
    long double c = (long double)t.c * std::pow((long double)n, t.dn) * std::pow((long double)ell, t.dl);
    s += (double)c * pw[t.dlam];
  }
  return s;
}

void fnv(std::uint64_t& h, long long x) {
  for (int b = 0; b < 8; ++b) {
    h ^= (std::uint64_t)((unsigned long long)x >> (8 * b)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

ClosedForm closed_form_from_string(const std::string& s) {
  static const std::map<std::string, ClosedForm> m = {
      {"C", ClosedForm::GenericC},         {"eps", ClosedForm::GenericEps},   {"delta3", ClosedForm::Delta3},
      {"delta5", ClosedForm::Delta5EllZero}, {"susy_C", ClosedForm::SusyC}, {"susy_eps", ClosedForm::SusyEps},
      {"susy_delta1", ClosedForm::SusyDelta1}};
  auto it = m.find(s);
  if (it == m.end()) throw ArgumentError("unknown closed form '" + s + "'");
  return it->second;
}

std::uint64_t appendix_table_checksum() {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* nm : kOrder) {
    const Table& T = table(nm);
    for (std::size_t i = 0; i < T.n; ++i) {
      fnv(h, T.t[i].c);
      fnv(h, T.t[i].dn);
      fnv(h, T.t[i].dl);
      fnv(h, T.t[i].dlam);
    }
  }
  return h;
}

std::uint64_t appendix_expected_checksum() { return 0x1d1ac63740e0aa9aULL; }

namespace {

cplx closed_form_raw(ClosedForm w, int n, int ell, cplx lam) {
  switch (w) {
    // the printed C_n = P1/P2 has the wrong sign; B_n/(rt_n rt_{n+1}) = -P1/P2
    case ClosedForm::GenericC: return -eval("P1", n, ell, lam) / eval("P2", n, ell, lam);
    case ClosedForm::GenericEps: return eval("P3", n, ell, lam) / eval("P2", n, ell, lam);
    case ClosedForm::Delta3: return eval("R1", 0, ell, lam) / eval("R2", 0, ell, lam);
    case ClosedForm::Delta5EllZero: return eval("R3", 0, 0, lam) / eval("R4", 0, 0, lam);
    case ClosedForm::SusyC: return eval("SC_num", n, 0, lam) / eval("S_den", n, 0, lam);
    case ClosedForm::SusyEps: return eval("SE_num", n, 0, lam) / eval("S_den", n, 0, lam);
    case ClosedForm::SusyDelta1: return eval("D1_num", 0, 0, lam) / eval("D1_den", 0, 0, lam);
  }
  return 0;
}

bool close_rel(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

void appendix_validate() {
  static std::once_flag flag;
  static std::string failure;
  std::call_once(flag, [] {
    if (appendix_table_checksum() != appendix_expected_checksum()) {
      failure = "appendix coefficient table checksum mismatch";
      return;
    }
    cplx l1(0.7, 0.3);
    RatioState g = delta_eps_C(ProblemKind::GenericEll, 2, l1, 6);
    if (!close_rel(closed_form_raw(ClosedForm::Delta3, 3, 2, l1), g.delta[3], 1e-10)) failure = "delta_3 cross-check failed";
    cplx l2(2, 1);
    cplx Cs = susy_coef_B(4, l2) / (quasi_solution(ProblemKind::SusyEllOne, 0, 4, l2) * quasi_solution(ProblemKind::SusyEllOne, 0, 5, l2));
    if (!close_rel(closed_form_raw(ClosedForm::SusyC, 4, 0, l2), Cs, 1e-10)) failure = "susy C_n cross-check failed";
    cplx l3(1, 2);
    RatioState e = delta_eps_C(ProblemKind::GenericEll, 3, l3, 8);
    if (!close_rel(closed_form_raw(ClosedForm::GenericEps, 5, 3, l3), e.eps[5], 1e-10)) failure = "eps_n cross-check failed";
  });
  if (!failure.empty()) throw NumericalError(failure);
}

cplx appendix_closed_form(ClosedForm w, int n, int ell, cplx lam) {
  switch (w) {
    case ClosedForm::GenericC:
    case ClosedForm::GenericEps:
      if (n < 3 || ell < 2) throw ArgumentError("generic closed forms need n >= 3, l >= 2");
      break;
    case ClosedForm::Delta3:
      if (ell < 2) throw ArgumentError("delta_3 closed form needs l >= 2");
      break;
    case ClosedForm::SusyC:
    case ClosedForm::SusyEps:
      if (n < 1) throw ArgumentError("susy closed forms need n >= 1");
      break;
    default: break;
  }
  appendix_validate();
  return closed_form_raw(w, n, ell, lam);
}

std::vector<mpz_class> appendix_poly_lambda(const std::string& name, long n, long ell) {
  const Table& T = table(name);
  std::vector<mpz_class> c;
  for (std::size_t i = 0; i < T.n; ++i) {
    const Term& t = T.t[i];
    if ((int)c.size() <= t.dlam) c.resize(t.dlam + 1);
    mpz_class v(static_cast<long>(t.c)), pn, pl;
    pn = 1;
    for (int k = 0; k < t.dn; ++k) pn *= n;
    pl = 1;
    for (int k = 0; k < t.dl; ++k) pl *= ell;
    c[t.dlam] += v * pn * pl;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

std::vector<cplx> LambdaGrid::standard(double im_max, int n_im, double box_re, double box_im, double box_step) {
  std::vector<cplx> g;
  for (int k = 0; k < n_im; ++k) {
    double y = n_im > 1 ? im_max * k / (n_im - 1) : 0.0;
    g.emplace_back(0.0, y);
    if (y > 0) g.emplace_back(0.0, -y);
  }
  if (box_step > 0) {
    int nx = (int)std::lround(box_re / box_step), ny = (int)std::lround(box_im / box_step);
    for (int i = 1; i <= nx; ++i)
      for (int j = -ny; j <= ny; ++j) g.emplace_back(i * box_step, j * box_step);
  }
  return g;
}

BoundReport verify_bounds(ProblemKind kind, const std::vector<int>& ells, const std::vector<cplx>& lambdas, int n_cap,
                          double excl) {
  BoundReport rep;
  rep.n_cap = n_cap;
  rep.exclusion_radius = excl;
  std::vector<int> L = ells;
  if (kind == ProblemKind::EllZero) L = {0};
  if (kind == ProblemKind::SusyEllOne) L = {1};
  const int s = delta_start(kind);
  for (int ell : L) {
    std::map<std::string, BoundEntry> worst;
    auto note = [&](const BoundEntry& e) {
      auto it = worst.find(e.quantity);
      if (it == worst.end() || e.slack < it->second.slack) worst[e.quantity] = e;
      if (e.slack < 0) rep.violations.push_back(e);
    };
    for (cplx lam : lambdas) {
      if (kind == ProblemKind::EllZero && (std::abs(lam - 1.0) < excl || std::abs(lam - 3.0) < excl)) {
        rep.excluded.push_back(lam);
        continue;
      }
      ++rep.samples;
      RatioState st = delta_eps_C(kind, ell, lam, n_cap);
      BoundEntry b{kind, ell, s, lam, "delta_start", std::abs(st.delta[s]), 1.0 / 3, 0};
      b.slack = b.bound - b.value;
      note(b);
      BoundEntry we{kind, ell, 0, lam, "eps", -1, 0, 1e300}, wc{kind, ell, 0, lam, "C", -1, 0, 1e300},
          wd{kind, ell, 0, lam, "delta_prop", -1, 0, 1e300};
      for (int n = s; n <= n_cap; ++n) {
        double gl = kind == ProblemKind::GenericEll ? ell / double(ell + n + 5) : 0.0;
        double d = std::abs(st.delta[n]);
        if (1.0 / 3 - d < wd.slack) wd = {kind, ell, n, lam, "delta_prop", d, 1.0 / 3, 1.0 / 3 - d};
        if (n == n_cap) break;
        double eb = 1.0 / 12 + gl / 6, cb = 0.5 - gl / 3;
        double ev = std::abs(st.eps[n]), cv = std::abs(st.C[n]);
        if (eb - ev < we.slack) we = {kind, ell, n, lam, "eps", ev, eb, eb - ev};
        if (cb - cv < wc.slack) wc = {kind, ell, n, lam, "C", cv, cb, cb - cv};
      }
      note(we);
      note(wc);
      note(wd);
    }
    for (auto& [k, v] : worst) rep.worst.push_back(v);
  }
  return rep;
}

}  // namespace blowuplab
