#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "blowuplab/appendix.hpp"
#include "blowuplab/evolution.hpp"
#include "blowuplab/nonhom.hpp"
#include "blowuplab/polyfield.hpp"
#include "blowuplab/polynomial.hpp"
#include "blowuplab/profiles.hpp"
#include "blowuplab/recurrence.hpp"
#include "blowuplab/spectral_scan.hpp"

using namespace blowuplab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::mt19937_64 rng(20260419);

Vec7 random_ball_point(double rmax = 1.0) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01;
  Vec7 x;
  double s = 0;
  for (double& v : x) s += (v = n01(rng)) * v;
  double r = rmax * std::pow(u01(rng), 1.0 / 7.0) / std::sqrt(s);
  for (double& v : x) v *= r;
  return x;
}

BoostParams random_boost() { return BoostParams(random_ball_point(0.2)); }

Outcome c1_profile_residuals() {
  std::vector<BoostParams> as{BoostParams()};
  for (int i = 0; i < 5; ++i) as.push_back(random_boost());
  double worst = 0;
  for (const auto& a : as)
    for (int k = 0; k < 1000; ++k) worst = std::max(worst, std::abs(static_residual(random_ball_point(), a)));
  double ode = std::abs(ode_profile_residual());
  return {worst <= 1e-10 && ode <= 1e-10, fmt("max |residual| %.2e over 6 boosts x 1000 points, sqrt2 profile %.2e", worst, ode)};
}

Outcome c2_eigenstructure() {
  double t_res = 0;
  const std::vector<std::pair<int, int>> pairs = {{0, 3}, {0, 1}, {1, 1}, {1, 0}};
  for (auto [l, lam] : pairs)
    for (int k = 1; k <= 99; ++k) {
      double r = k / 100.0;
      t_res = std::max(t_res, std::abs(apply_T(l, double(lam), CJet(radial_eigenfunction_jet(l, lam, r)), r)));
    }
  double pair_res = 0;
  std::vector<BoostParams> as{BoostParams(), random_boost(), random_boost()};
  auto check = [&](const Grad7& u, Pair p, const Vec7& x, double lam) {
    double e = p[1] - dot(x, u.g) - (lam + 1) * u.v;
    pair_res = std::max(pair_res, std::abs(e) / std::max(1.0, std::abs(p[1])));
  };
  for (const auto& a : as)
    for (int k = 0; k < 200; ++k) {
      Vec7 x = random_ball_point();
      check(eigenfunction_h_grad(x, a), eigenfunction_h(x, a), x, 3);
      for (int i = 0; i <= 7; ++i) check(eigenfunction_g_grad(i, x, a), eigenfunction_g(i, x, a), x, 1);
      for (int j = 1; j <= 7; ++j) check(eigenfunction_q_grad(j, x, a), eigenfunction_q(j, x, a), x, 0);
    }
  // centered differences of the static pair in a_j against 4 q_j (q is normalized as xi_j (3-|xi|^2)/(1+|xi|^2)^2 at a = 0)
  BoostParams a0 = random_boost();
  std::vector<Vec7> xs;
  for (int k = 0; k < 50; ++k) xs.push_back(random_ball_point());
  auto fd_err = [&](double h) {
    double e = 0;
    for (int j = 1; j <= 7; ++j) {
      Vec7 ap = a0.a, am = a0.a;
      ap[j - 1] += h;
      am[j - 1] -= h;
      BoostParams bp(ap, 0.3), bm(am, 0.3);
      for (const auto& x : xs) {
        auto [p1, p2] = static_pair(x, bp);
        auto [m1, m2] = static_pair(x, bm);
        Pair q = eigenfunction_q(j, x, a0);
        e = std::max({e, std::abs((p1 - m1) / (2 * h) - 4 * q[0]), std::abs((p2 - m2) / (2 * h) - 4 * q[1])});
      }
    }
    return e;
  };
  double e1 = fd_err(1e-2), e2 = fd_err(5e-3), e3 = fd_err(2.5e-3);
  double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
  bool ok = t_res <= 1e-10 && pair_res <= 1e-12 && std::abs(o1 - 2) < 0.2 && std::abs(o2 - 2) < 0.2;
  return {ok, fmt("T residual %.2e, pair identity %.2e, FD orders %.3f %.3f", t_res, pair_res, o1, o2)};
}

Outcome c3_recurrence() {
  auto a = [](ProblemKind k, int l, double lam, int n) { return series_coeffs(k, l, lam, n + 2).value(n); };
  double e1 = std::abs(a(ProblemKind::EllZero, 0, 3, 1));
  double e2 = std::abs(a(ProblemKind::EllZero, 0, 1, 1) + 1.0);
  double e3 = std::abs(a(ProblemKind::GenericEll, 1, 0, 1) + 2.0 / 3.0);
  double e4 = std::abs(a(ProblemKind::GenericEll, 1, 0, 2));
  double closed = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      cplx lam(0.5 * i, -4.5 + j);
      Series s = series_coeffs(ProblemKind::EllZero, 0, lam, 6);
      for (int n : {2, 3}) {
        cplx c = series_coeffs_ell0_closed(n, lam);
        closed = std::max(closed, std::abs(c - s.value(n)) / std::max(1.0, std::abs(c)));
      }
    }
  double worst = std::max({e1, e2, e3, e4});
  return {worst <= 1e-13 && closed <= 1e-12, fmt("initial coefficients off by %.1e, closed forms a2,a3 vs recurrence %.2e", worst, closed)};
}

Outcome c4_mode_stability() {
  auto t0 = std::chrono::steady_clock::now();
  ScanReport r = scan_halfplane(6, 0, 5, -5, 5, 0.25);
  double dt = seconds_since(t0);
  std::set<std::pair<int, double>> found, want = {{0, 1.0}, {0, 3.0}, {1, 0.0}, {1, 1.0}};
  bool real_only = true;
  for (const auto& e : r.eigenvalues()) {
    found.insert({e.ell, e.lambda.real()});
    real_only = real_only && e.lambda.imag() == 0;
  }
  bool ok = found == want && real_only && dt <= 300;
  return {ok, fmt("%zu points, %zu eigenvalues (want 4), %d undecided, %.1f s", r.entries.size(), r.eigenvalues().size(),
                  r.count(Classification::Undecided), dt)};
}

Outcome c5_bounds() {
  std::vector<cplx> lams = LambdaGrid::standard(50, 101, 5, 5, 0.25);
  std::vector<int> ells;
  for (int l = 2; l <= 20; ++l) ells.push_back(l);
  BoundReport g = verify_bounds(ProblemKind::GenericEll, ells, lams);
  BoundReport z = verify_bounds(ProblemKind::EllZero, {0}, lams);
  BoundReport s = verify_bounds(ProblemKind::SusyEllOne, {1}, lams);
  mpq_class d1(appendix_poly_lambda("D1_num", 0, 0)[0], appendix_poly_lambda("D1_den", 0, 0)[0]);
  d1.canonicalize();
  size_t v = g.violations.size() + z.violations.size() + s.violations.size();
  bool ok = v == 0 && d1 == mpq_class(3, 44);
  return {ok, fmt("%d samples, %zu violations, %zu excluded, susy delta1(0) = %s", g.samples + z.samples + s.samples, v,
                  z.excluded.size(), d1.get_str().c_str())};
}

Outcome c6_certificates() {
  int sign_fail = 0, rh_fail = 0, disagree = 0;
  double max_re = -INFINITY;
  for (int n = 0; n <= 20; ++n)
    for (int l = 0; l <= 20; ++l) {
      if (!q_polynomial_sign_check(n, l)) ++sign_fail;
      auto P = appendix_poly_lambda("P2", n + 3, l + 2);
      QPoly q;
      std::vector<cplx> c;
      for (auto& z : P) {
        q.push_back(mpq_class(z));
        c.push_back(z.get_d());
      }
      bool rh = routh_hurwitz_exact(q) && routh_hurwitz_check(c);
      double mr = -INFINITY;
      for (cplx root : poly_roots(c)) mr = std::max(mr, root.real());
      max_re = std::max(max_re, mr);
      if (!rh) ++rh_fail;
      if (rh != (mr < 0)) ++disagree;
    }
  bool ok = sign_fail == 0 && rh_fail == 0 && disagree == 0;
  return {ok, fmt("sign failures %d, Routh-Hurwitz failures %d, root disagreements %d, max Re root %.3f (P2 at n+3, l+2)",
                  sign_fail, rh_fail, disagree, max_re)};
}

Outcome c7_nonhom() {
  bool ok = true;
  std::string d;
  for (auto p : {NonHomProblem::NonHom1, NonHomProblem::NonHom2, NonHomProblem::NonHom3, NonHomProblem::NonHom4}) {
    AsymptoticCheck a = nonhom_asymptotics(p);
    ok = ok && a.pass;
    d += fmt("%s R2 %.5f slope %.3f; ", to_string(p).c_str(), a.fit.r2, a.fit.slope);
  }
  double C = constant_C();
  double oracle = 11.0 / 24.0 - 5 * std::numbers::pi / 32;  // -2 * int_0^{pi/4} sin^6
  ok = ok && C < 0 && 6 * C + 0.5 > 0 && std::abs(C - oracle) <= 1e-10;
  return {ok, d + fmt("C = %.15f (|C - closed form| = %.1e)", C, std::abs(C - oracle))};
}

Outcome c8_dissipativity() {
  auto rows = dissipativity_sweep(200, 1234, 6);
  int bad = 0;
  double rmin = INFINITY, rmax = 0;
  for (const auto& r : rows) {
    if (r.margin > 0) ++bad;
    rmin = std::min(rmin, r.ratio);
    rmax = std::max(rmax, r.ratio);
  }
  ExactScalar c10 = dissipativity_margin({MultiPoly7::constant(1), {}});
  ExactScalar c01 = dissipativity_margin({{}, MultiPoly7::constant(1)});
  bool ok = bad == 0 && rows.size() == 200 && c10.q == mpq_class(-8, 15) && c01.q <= 0;
  return {ok, fmt("%d positive margins of %zu, corner (1,0) = %s pi^3, (0,1) = %s pi^3, ratio in [%.2f, %.2f]", bad,
                  rows.size(), c10.q.get_str().c_str(), c01.q.get_str().c_str(), rmin, rmax)};
}

Outcome c9_discrete_spectrum() {
  bool ok = true;
  double err3_64 = 0, err_all = 0;
  for (int l = 0; l <= 6; ++l) {
    SpectrumResult s = discrete_spectrum(l, 64);
    auto u = s.unstable();
    std::vector<double> want = l == 0 ? std::vector<double>{3, 1} : l == 1 ? std::vector<double>{1, 0} : std::vector<double>{};
    if (u.size() != want.size()) {
      ok = false;
      continue;
    }
    for (size_t i = 0; i < want.size(); ++i) err_all = std::max(err_all, std::abs(u[i] - want[i]));
    if (l == 0) {
      const auto& e = s.entries.front();
      err3_64 = std::abs((e.polished - 3.0) + e.polished_lo);
    }
  }
  SpectrumResult s128 = discrete_spectrum(0, 128);
  const auto& e = s128.entries.front();
  double err3_128 = std::abs((e.polished - 3.0) + e.polished_lo);
  bool shrink = err3_128 * 10 <= err3_64;
  ok = ok && err_all <= 1e-6;
  return {ok && shrink, fmt("recovery error %.1e, no unstable l=2..6: %s; lambda=3 error N=64 %.1e, N=128 %.1e (shrink %s)",
                            err_all, ok ? "yes" : "no", err3_64, err3_128, shrink ? "ok" : "below 10x")};
}

Outcome c10_rates() {
  EvolveConfig cfg;
  cfg.N = 48;
  cfg.dt = 2e-3;
  cfg.tau_end = 5;
  struct Case {
    int ell, lam;
    double want;
  };
  double worst = 0;
  std::string d = "slopes";
  for (Case c : {Case{0, 3, 3}, Case{0, 1, 1}, Case{1, 0, 0}}) {
    RadialGrid<double> g = radial_grid(cfg.N, c.ell);
    LinearFit f = growth_fit(evolve_linear(sample_eigenpair(c.ell, c.lam, g), cfg), 1, 5);
    worst = std::max(worst, std::abs(f.slope - c.want));
    d += fmt(" %.6f", f.slope);
  }
  RadialGrid<double> g = radial_grid(64, 0);
  RadialState s;
  for (double r : g.rho) {
    s.psi1.push_back(std::pow(1 + r * r, -3));
    s.psi2.push_back(0);
  }
  s = project_out_unstable(s, 64);
  EvolveConfig dc;
  dc.N = 64;
  dc.dt = 1e-3;
  dc.tau_end = 7;
  Trajectory t = evolve_linear(s, dc);
  double w[3];
  for (int k = 0; k < 3; ++k) w[k] = convergence_rate(t, 2.0 + k, 4.0 + k).omega;
  double spread = std::max(std::abs(w[0] - w[1]), std::abs(w[2] - w[1])) / w[1];
  bool ok = worst <= 1e-3 && w[0] > 0 && w[1] > 0 && w[2] > 0 && spread <= 0.1;
  return {ok, d + fmt("; omega on [2,4],[3,5],[4,6]: %.4f %.4f %.4f (spread %.1f%%)", w[0], w[1], w[2], 100 * spread)};
}

Outcome static_run(bool sqrt2) {
  EvolveConfig c;
  c.N = 64;
  c.dt = 1e-3;
  c.tau_end = 10;
  c.sample_dt = 0.5;
  c.quad = true;
  c.blowup_cutoff = 1e6;
  c.decay_cutoff = 0;
  RadialGrid<double> g = radial_grid(c.N, 0);
  Trajectory t = evolve_nonlinear(sqrt2 ? static_state_sqrt2(g) : static_state_psi_star(g), c);
  return {t.status == RunStatus::Completed && t.max_drift <= 1e-8, fmt("%.1e", t.max_drift)};
}

Outcome c11_threshold(std::future<Outcome>& psi, std::future<Outcome>& sq) {
  ThresholdConfig tc;
  tc.evolve.N = 128;
  tc.evolve.dt = 5e-4;
  tc.evolve.tau_end = 40;
  tc.iterations = 20;
  auto zero = [](double) { return 0.0; };
  ThresholdResult r = threshold_bisect(zero, zero, -0.05, 0.07, tc);
  bool lengthens = true;
  for (size_t i = 1; i < r.stages.size(); ++i) lengthens = lengthens && r.stages[i].plateau >= r.stages[i - 1].plateau;
  bool grows = r.stages.size() > 1 && r.stages.back().plateau > r.stages.front().plateau;
  Outcome a = psi.get(), b = sq.get();
  bool ok = a.pass && b.pass && r.converged && std::abs(r.alpha_star) <= 1e-2 && r.monotone && lengthens && grows;
  return {ok, fmt("static drift psi* %s, sqrt2 %s; alpha* = %.2e, width %.1e, labels monotone %s, plateau %.2f -> %.2f",
                  a.detail.c_str(), b.detail.c_str(), r.alpha_star, r.width, r.monotone ? "yes" : "no",
                  r.stages.front().plateau, r.stages.back().plateau)};
}

Outcome c12_order() {
  RadialGrid<double> g = radial_grid(24, 0);
  RadialState s = static_state_psi_star(g), h = sample_eigenpair(0, 3, g);
  for (int i = 0; i < g.size(); ++i) {
    s.psi1[i] -= 0.05 * h.psi1[i];
    s.psi2[i] -= 0.05 * h.psi2[i];
  }
  s.sampler = nullptr;
  OrderSweep o = temporal_order_sweep(s, 24, {0.016, 0.008, 0.004, 0.002}, 2.0);
  return {std::abs(o.fit.slope - 4) <= 0.5, fmt("slope %.3f (R2 %.4f), errors %.1e .. %.1e", o.fit.slope, o.fit.r2,
                                                o.errors.front(), o.errors.back())};
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  // long quad-precision static runs start first and overlap the other criteria
  auto psi = std::async(std::launch::async, [] { return static_run(false); });
  auto sq = std::async(std::launch::async, [] { return static_run(true); });
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"explicit-solution residuals", c1_profile_residuals},
      {"eigen-structure", c2_eigenstructure},
      {"recurrence exactness", c3_recurrence},
      {"mode-stability sampling", c4_mode_stability},
      {"bound verification", c5_bounds},
      {"sign/stability certificates", c6_certificates},
      {"multiplicity-one asymptotics", c7_nonhom},
      {"exact dissipativity", c8_dissipativity},
      {"discrete spectrum", c9_discrete_spectrum},
      {"semigroup rates", c10_rates},
      {"nonlinear statics and threshold", [&] { return c11_threshold(psi, sq); }},
      {"temporal order", c12_order},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto ts = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(ts));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed in %.1fs\n", criteria.size() - failed, criteria.size(), seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
