#include "blowuplab/evolution.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/parallel.hpp"
#include "blowuplab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace blowuplab {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BlowupDetected: return "blowup_detected";
    case RunStatus::DecayDetected: return "decay_detected";
  }
  return "?";
}

std::string to_string(Label l) {
  switch (l) {
    case Label::Blowup: return "blowup";
    case Label::Dispersal: return "dispersal";
    case Label::Undecided: return "undecided";
  }
  return "?";
}

namespace {

template <class Real>
Real psi_star_1(Real r) {
  return Real(4) / (Real(1) + r * r);
}
template <class Real>
Real psi_star_2(Real r) {
  Real w = Real(1) + r * r;
  return Real(4) * (Real(1) - r * r) / (w * w);
}

template <class Real>
struct System {
  RadialGrid<Real> g;
  int n = 0;
  bool nonlinear = false;
  std::vector<Real> V, inv_r, lterm;
  std::vector<Real> filter;  // n x n, empty when off
  mutable std::vector<Real> d1f, d2f, d1g, tmp;

  System(int N, int ell, bool nl, double filter_strength) : g(make_radial_grid<Real>(N, ell)), n(N + 1), nonlinear(nl) {
    V.resize(n);
    inv_r.resize(n);
    lterm.resize(n);
    for (int i = 0; i < n; ++i) {
      Real r = g.rho[i], w = Real(1) + r * r;
      V[i] = Real(48) / (w * w);
      inv_r[i] = Real(1) / r;
      lterm[i] = Real(ell * (ell + 5)) / (r * r);
    }
    d1f.resize(n);
    d2f.resize(n);
    d1g.resize(n);
    tmp.resize(n);
    if (filter_strength > 0) build_filter(filter_strength);
  }

  void build_filter(double strength) {
    // values -> coefficients -> exp(-a (k/M)^16) -> values, folded by parity
    RadialGrid<double> gd = make_radial_grid<double>(g.N, g.ell);
    const int M = 2 * g.N + 1;
    filter.assign((size_t)n * n, Real(0));
    for (int b = 0; b < n; ++b) {
      std::vector<double> e(n, 0.0);
      e[b] = 1;
      auto a = gd.cheb_coeffs(e);
      for (int k = 0; k <= M; ++k) a[k] *= std::exp(-36.0 * strength * std::pow((double)k / M, 16));
      for (int i = 0; i < n; ++i) {
        double x = (double)gd.rho[i], s = 0;
        double th = std::acos(std::clamp(x, -1.0, 1.0));
        for (int k = 0; k <= M; ++k) s += a[k] * std::cos(k * th);
        filter[(size_t)i * n + b] = Real(s);
      }
    }
  }

  void rhs(const Real* u, Real* du) const {
    const Real* f = u;
    const Real* gg = u + n;
    g.apply(g.D1, f, d1f.data());
    g.apply(g.D2, f, d2f.data());
    g.apply(g.D1, gg, d1g.data());
    for (int i = 0; i < n; ++i) {
      Real r = g.rho[i];
      du[i] = -r * d1f[i] - f[i] + gg[i];
      Real src = nonlinear ? f[i] * f[i] * f[i] : V[i] * f[i];
      du[n + i] = d2f[i] + Real(6) * inv_r[i] * d1f[i] - lterm[i] * f[i] - r * d1g[i] - Real(2) * gg[i] + src;
    }
  }

  void apply_filter(Real* u) const {
    if (filter.empty()) return;
    for (int c = 0; c < 2; ++c) {
      g.apply(filter, u + c * n, tmp.data());
      std::copy(tmp.begin(), tmp.end(), u + c * n);
    }
  }
};

bool finite_all(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

template <class Real>
Trajectory run(const RadialState& s0, const EvolveConfig& cfg, bool nonlinear) {
  if (cfg.dt <= 0 || cfg.tau_end < 0) throw ArgumentError("dt must be > 0 and tau_end >= 0");
  if ((int)s0.psi1.size() != cfg.N + 1 || (int)s0.psi2.size() != cfg.N + 1)
    throw ArgumentError("state length does not match N+1 = " + std::to_string(cfg.N + 1));
  if (nonlinear && s0.ell != 0) throw ArgumentError("nonlinear evolution is radial only (ell = 0)");
  double dtmax = max_stable_dt(s0.ell, cfg.N, cfg.cfl);
  if (cfg.dt > dtmax)
    throw ArgumentError("dt = " + std::to_string(cfg.dt) + " exceeds the RK4 stability bound " + std::to_string(dtmax));
  System<Real> sys(cfg.N, s0.ell, nonlinear, cfg.filter_strength);
  RadialGrid<double> gd = make_radial_grid<double>(cfg.N, s0.ell);
  const int n = cfg.N + 1;
  std::vector<Real> u(2 * n), u0, k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), w(2 * n);
  for (int i = 0; i < n; ++i) {
    if (cfg.quad && s0.sampler) {
      auto [a, b] = s0.sampler(sys.g.rho[i]);
      u[i] = Real(a);
      u[n + i] = Real(b);
    } else {
      u[i] = Real(s0.psi1[i]);
      u[n + i] = Real(s0.psi2[i]);
    }
  }
  u0 = u;
  Trajectory tr;
  tr.ell = s0.ell;
  tr.N = cfg.N;
  tr.nonlinear = nonlinear;
  // uniform step landing exactly on tau_end
  const long steps = (long)std::ceil(cfg.tau_end / cfg.dt - 1e-9);
  const double dt_eff = steps > 0 ? cfg.tau_end / steps : cfg.dt;
  tr.dt = dt_eff;
  const long every = std::max(1L, std::lround(cfg.sample_dt / dt_eff));
  const Real dt = Real(cfg.tau_end) / Real(std::max(steps, 1L));

  RadialState cur;
  cur.ell = s0.ell;
  cur.psi1.resize(n);
  cur.psi2.resize(n);
  auto record = [&](long step) -> bool {
    cur.tau = s0.tau + step * dt_eff;
    Real dist = 0, drift = 0;
    for (int i = 0; i < n; ++i) {
      cur.psi1[i] = (double)u[i];
      cur.psi2[i] = (double)u[n + i];
      drift = std::max(drift, std::max(rmath::abs(u[i] - u0[i]), rmath::abs(u[n + i] - u0[n + i])));
      if (nonlinear) {
        Real r = sys.g.rho[i];
        dist = std::max(dist, std::max(rmath::abs(u[i] - psi_star_1(r)), rmath::abs(u[n + i] - psi_star_2(r))));
      }
    }
    TrajSample smp;
    smp.tau = cur.tau;
    smp.drift = (double)drift;
    smp.dist_static = (double)dist;
    smp.sup_origin = std::abs(gd.origin_value(cur.psi1));
    bool ok = finite_all(cur.psi1) && finite_all(cur.psi2);
    if (ok) {
      if (nonlinear) {
        RadialState pert = cur;
        for (int i = 0; i < n; ++i) {
          double r = gd.rho[i];
          pert.psi1[i] -= psi_star_1(r);
          pert.psi2[i] -= psi_star_2(r);
        }
        smp.norm = surrogate_norm(pert, gd);
        smp.modes = mode_amplitudes(pert, gd);
      } else {
        smp.norm = surrogate_norm(cur, gd);
        smp.modes = mode_amplitudes(cur, gd);
      }
    }
    tr.max_drift = std::max(tr.max_drift, smp.drift);
    tr.samples.push_back(smp);
    if (!ok) {
      tr.status = RunStatus::BlowupDetected;
      return false;
    }
    if (nonlinear) {
      if (smp.sup_origin > cfg.blowup_cutoff) {
        tr.status = RunStatus::BlowupDetected;
        return false;
      }
      if (surrogate_norm(cur, gd) < cfg.decay_cutoff) {
        tr.status = RunStatus::DecayDetected;
        return false;
      }
    } else if (smp.norm > 1e12) {
      tr.status = RunStatus::BlowupDetected;
      return false;
    }
    return true;
  };

  bool going = record(0);
  for (long st = 1; going && st <= steps; ++st) {
    sys.rhs(u.data(), k1.data());
    for (int i = 0; i < 2 * n; ++i) w[i] = u[i] + dt / 2 * k1[i];
    sys.rhs(w.data(), k2.data());
    for (int i = 0; i < 2 * n; ++i) w[i] = u[i] + dt / 2 * k2[i];
    sys.rhs(w.data(), k3.data());
    for (int i = 0; i < 2 * n; ++i) w[i] = u[i] + dt * k3[i];
    sys.rhs(w.data(), k4.data());
    for (int i = 0; i < 2 * n; ++i) u[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    sys.apply_filter(u.data());
    if (st % every == 0 || st == steps) going = record(st);
  }
  tr.final_state = cur;
  return tr;
}

// complex quad arithmetic for eigenvalue refinement
struct CQ {
  quad re = 0, im = 0;
  CQ() = default;
  CQ(quad r, quad i = 0) : re(r), im(i) {}
  CQ operator+(const CQ& o) const { return {re + o.re, im + o.im}; }
  CQ operator-(const CQ& o) const { return {re - o.re, im - o.im}; }
  CQ operator*(const CQ& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  CQ operator/(const CQ& o) const {
    quad d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  quad mag1() const { return fabsq(re) + fabsq(im); }
};

struct LUCQ {
  int m = 0;
  std::vector<CQ> a;
  std::vector<int> perm;
  LUCQ(std::vector<CQ> A, int m_) : m(m_), a(std::move(A)), perm(m_) {
    for (int c = 0; c < m; ++c) {
      int p = c;
      quad best = a[(size_t)c * m + c].mag1();
      for (int r = c + 1; r < m; ++r)
        if (a[(size_t)r * m + c].mag1() > best) {
          best = a[(size_t)r * m + c].mag1();
          p = r;
        }
      if (best == 0) throw NumericalError("singular shifted matrix in eigenvalue refinement");
      perm[c] = p;
      if (p != c)
        for (int k = 0; k < m; ++k) std::swap(a[(size_t)p * m + k], a[(size_t)c * m + k]);
      CQ piv = a[(size_t)c * m + c];
      for (int r = c + 1; r < m; ++r) {
        CQ f = a[(size_t)r * m + c] / piv;
        a[(size_t)r * m + c] = f;
        if (f.re == 0 && f.im == 0) continue;
        for (int k = c + 1; k < m; ++k) a[(size_t)r * m + k] = a[(size_t)r * m + k] - f * a[(size_t)c * m + k];
      }
    }
  }
  void solve(std::vector<CQ>& b) const {
    for (int c = 0; c < m; ++c)
      if (perm[c] != c) std::swap(b[c], b[perm[c]]);
    for (int c = 0; c < m; ++c)
      for (int r = c + 1; r < m; ++r) b[r] = b[r] - a[(size_t)r * m + c] * b[c];
    for (int r = m - 1; r >= 0; --r) {
      CQ s = b[r];
      for (int k = r + 1; k < m; ++k) s = s - a[(size_t)r * m + k] * b[k];
      b[r] = s / a[(size_t)r * m + r];
    }
  }
};

std::vector<quad> assemble_quad(int ell, int N) {
  System<quad> sys(N, ell, false, 0);
  const int n = N + 1, m = 2 * n;
  std::vector<quad> A((size_t)m * m, 0);
  for (int i = 0; i < n; ++i) {
    quad r = sys.g.rho[i];
    for (int j = 0; j < n; ++j) {
      quad d1 = sys.g.D1[(size_t)i * n + j], d2 = sys.g.D2[(size_t)i * n + j];
      A[(size_t)i * m + j] += -r * d1;
      A[(size_t)(n + i) * m + j] += d2 + 6 * sys.inv_r[i] * d1;
      A[(size_t)(n + i) * m + n + j] += -r * d1;
    }
    A[(size_t)i * m + i] += -1;
    A[(size_t)i * m + n + i] += 1;
    A[(size_t)(n + i) * m + i] += -sys.lterm[i] + sys.V[i];
    A[(size_t)(n + i) * m + n + i] += -2;
  }
  return A;
}

// shifted inverse iteration in complex quad precision around the double eigenvalue
std::pair<cplx, cplx> polish(const std::vector<quad>& A, int m, cplx lam0, const Eigen::VectorXcd& v0) {
  CQ sigma(lam0.real(), lam0.imag());
  std::vector<CQ> S((size_t)m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) S[(size_t)i * m + j] = i == j ? CQ(A[(size_t)i * m + j]) - sigma : CQ(A[(size_t)i * m + j]);
  LUCQ lu(std::move(S), m);
  std::vector<CQ> x(m);
  for (int i = 0; i < m; ++i) x[i] = CQ(v0[i].real(), v0[i].imag());
  CQ lam = sigma;
  for (int it = 0; it < 10; ++it) {
    lu.solve(x);
    int k = 0;
    for (int i = 1; i < m; ++i)
      if (x[i].mag1() > x[k].mag1()) k = i;
    CQ scale = CQ(1) / x[k];
    for (int i = 0; i < m; ++i) x[i] = x[i] * scale;
    // eigenvalue from the normalized component of A x
    CQ ax;
    for (int j = 0; j < m; ++j) ax = ax + CQ(A[(size_t)k * m + j]) * x[j];
    CQ next = ax;
    bool done = it > 0 && (next - lam).mag1() < 1e-31q * (1 + next.mag1());
    lam = next;
    if (done) break;
  }
  double hr = (double)lam.re, hi = (double)lam.im;
  return {cplx(hr, hi), cplx((double)(lam.re - hr), (double)(lam.im - hi))};
}

double vec_tail(const RadialGrid<double>& g, const Eigen::VectorXcd& v) {
  const int n = g.size();
  double tot = 0, tail = 0;
  for (int c = 0; c < 2; ++c)
    for (int part = 0; part < 2; ++part) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = part ? v[c * n + i].imag() : v[c * n + i].real();
      auto a = g.cheb_coeffs(x);
      const int M = (int)a.size() - 1;
      for (int kk = 0; kk <= M; ++kk) {
        tot += a[kk] * a[kk];
        if (4 * kk >= 3 * M) tail += a[kk] * a[kk];
      }
    }
  return tot > 0 ? tail / tot : 0.0;
}

}  // namespace

RadialGrid<double> radial_grid(int N, int ell) { return make_radial_grid<double>(N, ell); }

Eigen::MatrixXd assemble_linear_operator(int ell, const RadialGrid<double>& g) {
  if (g.N < 16) throw ArgumentError("assemble_linear_operator needs N >= 16");
  const int n = g.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    double r = g.rho[i], w = 1 + r * r;
    for (int j = 0; j < n; ++j) {
      double d1 = g.D1[(size_t)i * n + j], d2 = g.D2[(size_t)i * n + j];
      A(i, j) += -r * d1;
      A(n + i, j) += d2 + 6 / r * d1;
      A(n + i, n + j) += -r * d1;
    }
    A(i, i) += -1;
    A(i, n + i) += 1;
    A(n + i, i) += -ell * (ell + 5.0) / (r * r) + 48 / (w * w);
    A(n + i, n + i) += -2;
  }
  return A;
}

double spectral_radius(int ell, int N) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, double> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({ell, N});
    if (it != cache.end()) return it->second;
  }
  RadialGrid<double> g = make_radial_grid<double>(N, ell);
  Eigen::MatrixXd A = assemble_linear_operator(ell, g);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
  double rad = es.eigenvalues().cwiseAbs().maxCoeff();
  std::lock_guard<std::mutex> lk(mu);
  cache[{ell, N}] = rad;
  return rad;
}

double max_stable_dt(int ell, int N, double cfl) {
  // RK4 stability interval on the imaginary axis is 2*sqrt(2)
  return cfl * 2.0 * std::sqrt(2.0) / spectral_radius(ell, std::max(N, 16));
}

std::vector<cplx> SpectrumResult::unstable(double threshold) const {
  std::vector<cplx> out;
  for (const auto& e : entries)
    if (!e.spurious && e.polished.real() > threshold) out.push_back(e.polished);
  return out;
}

SpectrumResult discrete_spectrum(int ell, int N, double polish_above) {
  if (N < 32) throw ArgumentError("discrete_spectrum needs N >= 32");
  RadialGrid<double> g = make_radial_grid<double>(N, ell);
  Eigen::MatrixXd A = assemble_linear_operator(ell, g);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
  SpectrumResult res;
  res.ell = ell;
  res.N = N;
  const int m = (int)A.rows();
  std::vector<quad> Aq;
  for (int k = 0; k < m; ++k) {
    SpectrumEntry e;
    e.lambda = es.eigenvalues()[k];
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    e.tail = vec_tail(g, v);
    e.spurious = e.tail > 0.1;
    e.polished = e.lambda;
    if (!e.spurious && e.lambda.real() > polish_above) {
      if (Aq.empty()) Aq = assemble_quad(ell, N);
      std::tie(e.polished, e.polished_lo) = polish(Aq, m, e.lambda, v);
    }
    res.entries.push_back(e);
  }
  std::sort(res.entries.begin(), res.entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.lambda.real() > b.lambda.real(); });
  return res;
}

RadialState sample_eigenpair(int ell, int lambda, const RadialGrid<double>& g) {
  if (g.ell != ell) throw ArgumentError("grid parity does not match the channel");
  RadialState s;
  s.ell = ell;
  for (double r : g.rho) {
    Jet1 j = radial_eigenfunction_jet(ell, lambda, r);
    s.psi1.push_back(j.f);
    s.psi2.push_back(r * j.df + (lambda + 1) * j.f);
  }
  return s;
}

RadialState static_state_psi_star(const RadialGrid<double>& g) {
  RadialState s;
  s.ell = 0;
  for (double r : g.rho) {
    s.psi1.push_back(psi_star_1(r));
    s.psi2.push_back(psi_star_2(r));
  }
  s.sampler = [](quad r) { return std::pair<quad, quad>(psi_star_1(r), psi_star_2(r)); };
  return s;
}

RadialState static_state_sqrt2(const RadialGrid<double>& g) {
  RadialState s;
  s.ell = 0;
  s.psi1.assign(g.size(), std::sqrt(2.0));
  s.psi2.assign(g.size(), std::sqrt(2.0));
  s.sampler = [](quad) { return std::pair<quad, quad>(sqrtq(quad(2)), sqrtq(quad(2))); };
  return s;
}

double surrogate_norm(const RadialState& s, const RadialGrid<double>& g) {
  const int n = g.size();
  std::vector<double> df(n);
  g.apply(g.D1, s.psi1.data(), df.data());
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    double r6 = std::pow(g.rho[i], 6);
    acc += g.weights[i] * r6 * (s.psi1[i] * s.psi1[i] + df[i] * df[i] + s.psi2[i] * s.psi2[i]);
  }
  return std::sqrt(acc);
}

ModeAmplitudes mode_amplitudes(const RadialState& s, const RadialGrid<double>& g) {
  const int n = g.size();
  auto ip = [&](const RadialState& a, const RadialState& b) {
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += g.weights[i] * (a.psi1[i] * b.psi1[i] + a.psi2[i] * b.psi2[i]);
    return acc;
  };
  ModeAmplitudes out;
  std::vector<RadialState> basis;
  std::vector<double*> slot;
  if (s.ell == 0) {
    basis = {sample_eigenpair(0, 3, g), sample_eigenpair(0, 1, g)};
    slot = {&out.alpha_h, &out.alpha_g0};
  } else if (s.ell == 1) {
    basis = {sample_eigenpair(1, 1, g), sample_eigenpair(1, 0, g)};
    slot = {&out.alpha_g0, &out.alpha_q};
  }
  const int k = (int)basis.size();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
  if (k > 0) {
    Eigen::MatrixXd G(k, k);
    Eigen::VectorXd b(k);
    for (int i = 0; i < k; ++i) {
      b[i] = ip(basis[i], s);
      for (int j = 0; j < k; ++j) G(i, j) = ip(basis[i], basis[j]);
    }
    c = G.ldlt().solve(b);
    for (int i = 0; i < k; ++i) *slot[i] = c[i];
  }
  RadialState r = s;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) {
      r.psi1[j] -= c[i] * basis[i].psi1[j];
      r.psi2[j] -= c[i] * basis[i].psi2[j];
    }
  out.remainder_norm = std::sqrt(std::max(0.0, ip(r, r)));
  return out;
}

RadialState project_out_unstable(const RadialState& s, int N, double threshold) {
  RadialGrid<double> g = make_radial_grid<double>(N, s.ell);
  const int n = g.size();
  if ((int)s.psi1.size() != n) throw ArgumentError("state length does not match N+1");
  Eigen::MatrixXd A = assemble_linear_operator(s.ell, g);
  SpectrumResult sp = discrete_spectrum(s.ell, N, threshold);
  Eigen::VectorXcd u(2 * n);
  for (int i = 0; i < n; ++i) {
    u[i] = s.psi1[i];
    u[n + i] = s.psi2[i];
  }
  const Eigen::MatrixXcd Ac = A.cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  for (cplx lam : sp.unstable(threshold)) {
    cplx mu = lam + cplx(1e-10, 0);
    Eigen::PartialPivLU<Eigen::MatrixXcd> R(Ac - mu * I), L((Ac - mu * I).transpose());
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(2 * n), w = Eigen::VectorXcd::Ones(2 * n);
    for (int it = 0; it < 4; ++it) {
      v = R.solve(v);
      v /= v.norm();
      w = L.solve(w);
      w /= w.norm();
    }
    cplx c = (w.transpose() * u)(0) / (w.transpose() * v)(0);
    u -= c * v;
  }
  RadialState out = s;
  for (int i = 0; i < n; ++i) {
    out.psi1[i] = u[i].real();
    out.psi2[i] = u[n + i].real();
  }
  out.sampler = nullptr;
  return out;
}

Trajectory evolve_linear(const RadialState& s, const EvolveConfig& cfg) {
  return cfg.quad ? run<quad>(s, cfg, false) : run<double>(s, cfg, false);
}

Trajectory evolve_nonlinear(const RadialState& s, const EvolveConfig& cfg) {
  return cfg.quad ? run<quad>(s, cfg, true) : run<double>(s, cfg, true);
}

RadialState initial_data_transform(const RadialFn& f, const RadialFn& g, double T, const RadialGrid<double>& grid) {
  if (T < 0.5 || T > 1.5) throw DomainError("T must lie in [1/2, 3/2]");
  RadialState s;
  s.ell = 0;
  for (double r : grid.rho) {
    double x = T * r;
    if (x > 2) throw DomainError("data requested outside the ball of radius 2");
    s.psi1.push_back(T * f(x) + T * psi_star_1(x) - psi_star_1(r));
    s.psi2.push_back(T * T * g(x) + T * T * psi_star_2(x) - psi_star_2(r));
  }
  return s;
}

LinearFit growth_fit(const Trajectory& t, double t0, double t1) {
  std::vector<double> x, y;
  for (const auto& s : t.samples) {
    double v = t.nonlinear ? s.dist_static : s.norm;
    if (s.tau >= t0 - 1e-12 && s.tau <= t1 + 1e-12 && v > 0 && std::isfinite(v)) {
      x.push_back(s.tau);
      y.push_back(std::log(v));
    }
  }
  if (x.size() < 3) throw ArgumentError("fit window contains fewer than 3 samples");
  return linear_fit(x, y);
}

RateFit convergence_rate(const Trajectory& t, double t0, double t1) {
  RateFit r;
  r.fit = growth_fit(t, t0, t1);
  if (r.fit.n < 10) throw ArgumentError("convergence_rate needs at least 10 samples in the window");
  r.omega = -r.fit.slope;
  r.decaying = r.omega > 0;
  return r;
}

Label classify_run(const Trajectory& t) {
  if (t.status == RunStatus::BlowupDetected) return Label::Blowup;
  if (t.status == RunStatus::DecayDetected) return Label::Dispersal;
  return Label::Undecided;
}

double plateau_time(const Trajectory& t, double radius) {
  for (const auto& s : t.samples)
    if (!(s.dist_static <= radius)) return s.tau;
  return t.samples.empty() ? 0.0 : t.samples.back().tau;
}

ThresholdResult threshold_bisect(const RadialFn& v1, const RadialFn& v2, double alpha_lo, double alpha_hi,
                                 const ThresholdConfig& cfg) {
  if (!(alpha_lo < alpha_hi)) throw ArgumentError("need alpha_lo < alpha_hi");
  RadialGrid<double> grid = make_radial_grid<double>(cfg.evolve.N, 0);
  auto h1 = [](double x) { double w = 1 + x * x; return 1 / (w * w); };
  auto h2 = [](double x) { double w = 1 + x * x; return 4 / (w * w * w); };
  auto runner = [&](double alpha) {
    RadialState phi = initial_data_transform([&](double x) { return v1(x) + alpha * h1(x); },
                                             [&](double x) { return v2(x) + alpha * h2(x); }, cfg.T, grid);
    for (int i = 0; i < grid.size(); ++i) {
      phi.psi1[i] += psi_star_1(grid.rho[i]);
      phi.psi2[i] += psi_star_2(grid.rho[i]);
    }
    return evolve_nonlinear(phi, cfg.evolve);
  };
  auto min_dist = [](const Trajectory& t, double a, double b) {
    double m = INFINITY;
    for (const auto& s : t.samples)
      if (s.tau >= a && s.tau <= b) m = std::min(m, s.dist_static);
    return m;
  };

  ThresholdResult res;
  std::vector<Trajectory> ends(2);
  std::vector<double> ab = {alpha_lo, alpha_hi};
  parallel_for(2, [&](std::size_t i) { ends[i] = runner(ab[i]); }, cfg.threads);
  Label llo = classify_run(ends[0]), lhi = classify_run(ends[1]);
  if (llo == Label::Undecided || lhi == Label::Undecided || llo == lhi)
    throw BracketError("bracket endpoints are labelled " + to_string(llo) + " and " + to_string(lhi));
  double lo = alpha_lo, hi = alpha_hi;
  double plo = plateau_time(ends[0], cfg.plateau_radius), phi_ = plateau_time(ends[1], cfg.plateau_radius);
  res.converged = true;
  Trajectory last;
  for (int it = 0; it < cfg.iterations; ++it) {
    BisectionStage st;
    st.mid = (lo + hi) / 2;
    last = runner(st.mid);
    st.mid_label = classify_run(last);
    st.min_dist_2_6 = min_dist(last, 2, 6);
    if (st.mid_label == Label::Undecided) {
      res.converged = false;
      st.lo = lo;
      st.hi = hi;
      st.plateau = std::min(plo, phi_);
      res.stages.push_back(st);
      break;
    }
    double p = plateau_time(last, cfg.plateau_radius);
    if (st.mid_label == llo) {
      lo = st.mid;
      plo = p;
    } else {
      hi = st.mid;
      phi_ = p;
    }
    st.lo = lo;
    st.hi = hi;
    st.plateau = std::min(plo, phi_);
    res.stages.push_back(st);
  }
  res.lo = lo;
  res.hi = hi;
  res.width = hi - lo;
  res.alpha_star = (lo + hi) / 2;
  res.near_threshold = runner(res.alpha_star);

  const int k = std::max(0, cfg.interior_points);
  res.interior_checks.resize(k);
  parallel_for(
      k,
      [&](std::size_t i) {
        double a = lo + (hi - lo) * (i + 1) / (k + 1);
        res.interior_checks[i] = {a, classify_run(runner(a))};
      },
      cfg.threads);
  // labels read from lo to hi: a block of llo then a block of lhi
  res.monotone = true;
  bool switched = false;
  for (const auto& [a, l] : res.interior_checks) {
    if (l == Label::Undecided) res.monotone = false;
    if (l == lhi) switched = true;
    if (l == llo && switched) res.monotone = false;
  }
  return res;
}

OrderSweep temporal_order_sweep(const RadialState& s, int N, const std::vector<double>& dts, double tau_end) {
  if (dts.size() < 2) throw ArgumentError("need at least two step sizes");
  EvolveConfig cfg;
  cfg.N = N;
  cfg.tau_end = tau_end;
  cfg.sample_dt = tau_end;
  cfg.blowup_cutoff = 1e6;
  cfg.decay_cutoff = 0;
  double dmin = *std::min_element(dts.begin(), dts.end());
  cfg.dt = dmin / 4;
  Trajectory ref = evolve_nonlinear(s, cfg);
  OrderSweep out;
  out.dts = dts;
  out.errors.resize(dts.size());
  parallel_for(dts.size(), [&](std::size_t i) {
    EvolveConfig c = cfg;
    c.dt = dts[i];
    Trajectory t = evolve_nonlinear(s, c);
    double e = 0;
    for (int j = 0; j <= N; ++j)
      e = std::max({e, std::abs(t.final_state.psi1[j] - ref.final_state.psi1[j]),
                    std::abs(t.final_state.psi2[j] - ref.final_state.psi2[j])});
    out.errors[i] = e;
  });
  std::vector<double> x, y;
  for (size_t i = 0; i < dts.size(); ++i) {
    x.push_back(std::log(dts[i]));
    y.push_back(std::log(out.errors[i]));
  }
  out.fit = linear_fit(x, y);
  return out;
}

}  // namespace blowuplab
