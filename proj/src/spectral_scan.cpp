#include "blowuplab/spectral_scan.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/fit.hpp"
#include "blowuplab/parallel.hpp"

#include <cmath>
#include <limits>

namespace blowuplab {

cplx apply_T(int ell, cplx lam, const CJet& f, double r) {
  if (!(r > 0 && r < 1)) throw DomainError("apply_T requires 0 < rho < 1");
  double w = 1 + r * r;
  return (1 - r * r) * f.d2f + (6 / r - 2.0 * (lam + 2.0) * r) * f.df -
         ((lam + 1.0) * (lam + 2.0) + double(ell * (ell + 5)) / (r * r) - 48 / (w * w)) * f.f;
}

cplx apply_T_susy(cplx lam, const CJet& f, double r) {
  if (!(r > 0 && r < 1)) throw DomainError("apply_T_susy requires 0 < rho < 1");
  return (1 - r * r) * f.d2f + (4 / r - 2.0 * (lam + 1.0) * r) * f.df - lam * (lam + 1.0) * f.f -
         4 * (r * r + 7) / (r * r * (1 + r * r)) * f.f;
}

double HeunMap::x_of_rho(double r) { return 2 * r * r / (1 + r * r); }
double HeunMap::rho_of_x(double x) { return std::sqrt(x / (2 - x)); }

HeunMap heun_transform(ProblemKind kind, int ell, cplx lam) {
  HeunMap m;
  m.kind = kind;
  m.ell = kind == ProblemKind::EllZero ? 0 : ell;
  m.lam = lam;
  return m;
}

CJet HeunMap::f_from_y(double r, cplx y, cplx dy, cplx d2y) const {
  double x = x_of_rho(r);
  double w = 1 + r * r;
  double xp = 4 * r / (w * w), xpp = (4 - 12 * r * r) / (w * w * w);
  double e = kind == ProblemKind::SusyEllOne ? 2.0 : ell / 2.0;
  cplx mu = kind == ProblemKind::SusyEllOne ? lam / 2.0 : (lam + 1.0) / 2.0;
  cplx g = std::pow(x, e) * std::pow(cplx(2 - x), mu);
  cplx L1 = e / x - mu / (2 - x);
  cplx g1 = g * L1;
  cplx g2 = g * (L1 * L1 - e / (x * x) - mu / ((2 - x) * (2 - x)));
  cplx fx = g1 * y + g * dy;
  cplx fxx = g2 * y + 2.0 * g1 * dy + g * d2y;
  return {g * y, fx * xp, fxx * xp * xp + fx * xpp};
}

CJet HeunMap::series_solution(double r, int N) const {
  Series s = series_coeffs(kind, ell, lam, N);
  double x = x_of_rho(r);
  cplx y = 0, dy = 0, d2y = 0;
  for (int n = N; n >= 0; --n) {
    cplx a = s.value(n);
    y = y * x + a;
  }
  for (int n = N; n >= 1; --n) dy = dy * x + double(n) * s.value(n);
  for (int n = N; n >= 2; --n) d2y = d2y * x + double(n) * double(n - 1) * s.value(n);
  return f_from_y(r, y, dy, d2y);
}

OdeProblem ode_problem_from_string(const std::string& s) {
  if (s == "mode") return OdeProblem::ModeT;
  if (s == "susy") return OdeProblem::SusyReduced;
  if (s == "resolvent_u") return OdeProblem::ResolventU;
  if (s == "resolvent_v") return OdeProblem::ResolventV;
  throw ArgumentError("unknown ODE problem '" + s + "'");
}

namespace {

using CPoly = std::vector<cplx>;

CPoly pmul(const CPoly& a, const CPoly& b) {
  CPoly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

CPoly padd(CPoly a, const CPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

CPoly pscale(CPoly a, cplx s) {
  for (auto& x : a) x *= s;
  return a;
}

// coefficients of p(x0 + t) in t
CPoly pshift(const CPoly& p, double x0) {
  CPoly q(p.size(), 0.0);
  // Horner with polynomial arithmetic
  for (std::size_t k = p.size(); k-- > 0;) {
    CPoly nq(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      nq[i] += q[i] * x0;
      if (i + 1 < nq.size()) nq[i + 1] += q[i];
    }
    nq[0] += p[k];
    q = nq;
  }
  return q;
}

int order(const CPoly& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(p[i]) > 1e-13) return (int)i;
  return 1 << 20;
}

cplx coef(const CPoly& p, int k) { return k >= 0 && k < (int)p.size() ? p[k] : cplx(0); }

void ode_polys(OdeProblem pr, int ell, cplx lam, CPoly& P, CPoly& Q, CPoly& R) {
  const CPoly w = {1, 0, 1};
  const CPoly w2 = pmul(w, w);
  double L = ell;
  switch (pr) {
    case OdeProblem::ModeT:
      P = pmul(pmul({0, 0, 1}, w2), {1, 0, -1});
      Q = pmul({0, 6, 0, -2.0 * (lam + 2.0)}, w2);
      R = pscale(padd(pmul({L * (L + 5), 0, (lam + 1.0) * (lam + 2.0)}, w2), {0, 0, -48}), -1.0);
      break;
    case OdeProblem::SusyReduced:
      P = pmul(pmul({0, 0, 1}, w), {1, 0, -1});
      Q = pmul({0, 4, 0, -2.0 * (lam + 1.0)}, w);
      R = padd(pscale(pmul({0, 0, 1}, w), -lam * (lam + 1.0)), {-28, 0, -4});
      break;
    case OdeProblem::ResolventU:
      P = {0, 0, -1, 0, 1};
      Q = {0, -6, 0, 9};
      R = {L * (L + 5), 0, 63.0 / 4};
      break;
    case OdeProblem::ResolventV:
      P = {0, 0, -1, 0, 1};
      Q = {0, -2, 0, 5};
      R = {(L + 2) * (L + 3), 0, 15.0 / 4};
      break;
  }
}

}  // namespace

std::pair<cplx, cplx> indicial_coefficients(OdeProblem pr, int endpoint, int ell, cplx lam) {
  if (endpoint != 0 && endpoint != 1) throw ArgumentError("endpoint must be 0 or 1");
  CPoly P, Q, R;
  ode_polys(pr, ell, lam, P, Q, R);
  P = pshift(P, endpoint);
  Q = pshift(Q, endpoint);
  R = pshift(R, endpoint);
  int m = order(P);
  if (m == 0) return {0.0, 0.0};  // ordinary point
  if (m > 2 || order(Q) < m - 1 || order(R) < m - 2) throw UnsupportedError("irregular singular point");
  cplx pm = coef(P, m);
  return {coef(Q, m - 1) / pm, coef(R, m - 2) / pm};
}

std::pair<cplx, cplx> frobenius_indices(OdeProblem pr, int endpoint, int ell, cplx lam) {
  auto [p0, q0] = indicial_coefficients(pr, endpoint, ell, lam);
  if (p0 == 0.0 && q0 == 0.0) {
    CPoly P, Q, R;
    ode_polys(pr, ell, lam, P, Q, R);
    if (order(pshift(P, endpoint)) == 0) return {1.0, 0.0};
  }
  // s^2 + (p0 - 1) s + q0 = 0
  cplx b = p0 - 1.0;
  cplx d = std::sqrt(b * b - 4.0 * q0);
  cplx s1 = (-b + d) / 2.0, s2 = (-b - d) / 2.0;
  if (s1.real() < s2.real()) std::swap(s1, s2);
  return {s1, s2};
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Eigenvalue: return "eigenvalue";
    case Classification::NotEigenvalue: return "not_eigenvalue";
    case Classification::Undecided: return "undecided";
  }
  return "?";
}

Classified classify_lambda_kind(ProblemKind kind, int ell, cplx lam, const ClassifyOptions& opt) {
  Classified out;
  out.kind = kind;
  out.ell = kind == ProblemKind::EllZero ? 0 : (kind == ProblemKind::SusyEllOne ? 1 : ell);
  out.lambda = lam;
  const int N = std::max(opt.n_cap, 2 * opt.tail_window + 10);
  const int ell_r = kind == ProblemKind::EllZero ? 0 : ell;
  Series s = series_coeffs(kind, ell_r, lam, N + 1);

  // polynomial branch: a sharp drop to rounding level that persists for 10 terms
  double maxlog = 0;
  const double tiny = std::log(1e-13), drop = std::log(1e-6);
  for (int n = 1; n + 10 <= N + 1; ++n) {
    maxlog = std::max(maxlog, s.log_abs(n - 1));
    if (s.log_abs(n) > maxlog + tiny || s.log_abs(n - 1) < maxlog + drop) continue;
    bool stays = true;
    for (int k = n; k < n + 10 && stays; ++k) stays = s.log_abs(k) <= maxlog + tiny;
    if (stays) {
      out.evidence.polynomial_termination = true;
      out.label = Classification::Eigenvalue;
      return out;
    }
  }

  // Casoratian of the forward solution against the minimal one, matched past the last decoupling index
  int kstar = -1;
  for (int k = 0; k < N; ++k)
    if (kind_B(kind, ell_r, k, lam) == 0.0) kstar = k;
  const int j = kstar + 1;
  cplx rj = kind_A(kind, ell_r, j - 1, lam);
  cplx sm = 0.5;
  cplx smin_tail = 0.5;
  for (int n = N; n >= j + 1; --n) {
    sm = kind_B(kind, ell_r, n - 1, lam) / (sm - kind_A(kind, ell_r, n - 1, lam));
    if (n == N - opt.tail_window) smin_tail = sm;
  }
  double K = std::abs(sm - rj) / std::max({1.0, std::abs(sm), std::abs(rj)});
  if (!std::isfinite(K)) K = std::numeric_limits<double>::infinity();
  out.evidence.casoratian_mismatch = K;
  out.evidence.minimal_ratio = smin_tail;
  out.evidence.match_index = j;

  // forward tail, extrapolated in 1/n
  std::vector<double> ns;
  std::vector<cplx> rs;
  for (int n = N - opt.tail_window; n <= N; ++n) {
    ns.push_back(n);
    rs.push_back(s.ratio(n));
  }
  out.evidence.ratio_tail = extrapolate_inverse_powers(ns, rs, 2);

  if (K <= opt.mismatch_tol)
    out.label = Classification::Eigenvalue;
  else if (std::abs(out.evidence.ratio_tail - 1.0) <= opt.tol)
    out.label = Classification::NotEigenvalue;
  else
    out.label = Classification::Undecided;
  return out;
}

Classified classify_lambda(int ell, cplx lam, const ClassifyOptions& opt) {
  return classify_lambda_kind(ProblemKind::GenericEll, ell, lam, opt);
}

std::vector<Classified> ScanReport::eigenvalues() const {
  std::vector<Classified> v;
  for (auto& e : entries)
    if (e.label == Classification::Eigenvalue) v.push_back(e);
  return v;
}

int ScanReport::count(Classification c) const {
  int k = 0;
  for (auto& e : entries) k += e.label == c;
  return k;
}

std::vector<double> grid_axis(double lo, double hi, double step) {
  std::vector<double> v;
  if (!(step > 0) || hi < lo) return v;
  int n = (int)std::floor((hi - lo) / step + 1e-9);
  for (int i = 0; i <= n; ++i) v.push_back(lo + i * step);
  return v;
}

ScanReport scan_halfplane(int ell_max, double re_min, double re_max, double im_min, double im_max, double step,
                          const ClassifyOptions& opt, ProblemKind kind, unsigned threads) {
  if (!(step > 0)) throw ArgumentError("scan step must be positive");
  ScanReport rep;
  rep.kind = kind;
  rep.ell_max = ell_max;
  rep.re_min = re_min;
  rep.re_max = re_max;
  rep.im_min = im_min;
  rep.im_max = im_max;
  rep.step = step;
  rep.n_cap = opt.n_cap;
  std::vector<int> ells;
  if (kind == ProblemKind::GenericEll)
    for (int l = 0; l <= ell_max; ++l) ells.push_back(l);
  else if (ell_max >= 0)
    ells.push_back(kind == ProblemKind::EllZero ? 0 : 1);
  auto xs = grid_axis(re_min, re_max, step), ys = grid_axis(im_min, im_max, step);
  for (int l : ells)
    for (double x : xs)
      for (double y : ys) {
        Classified c;
        c.kind = kind;
        c.ell = l;
        c.lambda = cplx(x, y);
        rep.entries.push_back(c);
      }
  parallel_for(rep.entries.size(), [&](std::size_t i) {
    auto& e = rep.entries[i];
    e = classify_lambda_kind(kind, e.ell, e.lambda, opt);
  }, threads);
  return rep;
}

}  // namespace blowuplab
