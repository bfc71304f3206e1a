#include "blowuplab/profiles.hpp"
#include "blowuplab/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace blowuplab {

double norm2(const Vec7& x) { return dot(x, x); }
double dot(const Vec7& x, const Vec7& y) {
  double s = 0;
  for (int i = 0; i < 7; ++i) s += x[i] * y[i];
  return s;
}

namespace {

double denom(const Vec7& xi, const BoostCoeffs& c) {
  double g = c.A0 - dot(c.A, xi);
  return 2 * g * g + norm2(xi) - 1;
}

BoostCoeffs coeffs_raw(const Vec7& a) {
  BoostCoeffs c;
  c.A0 = 1;
  for (double x : a) c.A0 *= std::cosh(x);
  for (int k = 0; k < 7; ++k) {
    double p = std::sinh(a[k]);
    for (int j = k + 1; j < 7; ++j) p *= std::cosh(a[j]);
    c.A[k] = p;
  }
  return c;
}

double checked_denom(const Vec7& xi, const BoostParams& a) {
  double D = denom(xi, boost_coeffs(a));
  if (!(D > 0)) throw AdmissibilityError("profile denominator non-positive at requested point");
  return D;
}

}  // namespace

BoostParams::BoostParams(const Vec7& a_, double amax) : a(a_), a_max(amax) {
  double n = std::sqrt(norm2(a));
  if (!std::isfinite(n) || n > a_max)
    throw AdmissibilityError("boost parameter |a| = " + std::to_string(n) + " exceeds a_max = " + std::to_string(a_max));
  // sample the closed ball; the worst direction is along A
  BoostCoeffs c = coeffs_raw(a);
  double An = std::sqrt(norm2(c.A));
  double dmin = 1e300;
  for (int k = 0; k <= 50; ++k) {
    double t = k / 50.0;
    Vec7 xi{};
    for (int i = 0; i < 7; ++i) xi[i] = An > 0 ? t * c.A[i] / An : (i == 0 ? t : 0.0);
    dmin = std::min(dmin, denom(xi, c));
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud;
  for (int s = 0; s < 2000; ++s) {
    Vec7 xi;
    for (auto& x : xi) x = nd(rng);
    double r = std::sqrt(norm2(xi));
    double R = s % 4 == 0 ? 1.0 : std::pow(ud(rng), 1.0 / 7);
    for (auto& x : xi) x *= R / r;
    dmin = std::min(dmin, denom(xi, c));
  }
  if (!(dmin > 0)) throw AdmissibilityError("profile denominator not positive on the unit ball");
}

BoostCoeffs boost_coeffs(const BoostParams& a) { return coeffs_raw(a.a); }

BoostCoeffs boost_coeffs_da(const BoostParams& p, int j) {
  const Vec7& a = p.a;
  BoostCoeffs d;
  d.A0 = std::sinh(a[j]);
  for (int i = 0; i < 7; ++i)
    if (i != j) d.A0 *= std::cosh(a[i]);
  for (int k = 0; k < 7; ++k) {
    if (j < k) {
      d.A[k] = 0;
    } else if (j == k) {
      double v = std::cosh(a[k]);
      for (int i = k + 1; i < 7; ++i) v *= std::cosh(a[i]);
      d.A[k] = v;
    } else {
      double v = std::sinh(a[k]) * std::sinh(a[j]);
      for (int i = k + 1; i < 7; ++i)
        if (i != j) v *= std::cosh(a[i]);
      d.A[k] = v;
    }
  }
  return d;
}

double gamma(const Vec7& xi, const BoostParams& a) {
  BoostCoeffs c = boost_coeffs(a);
  return c.A0 - dot(c.A, xi);
}

double profile_U(double rho, int d) {
  if (d < 5) throw DomainError("profile_U requires d >= 5");
  return 2 * std::sqrt(2.0 * (d - 1) * (d - 4)) / (d - 4 + 3 * rho * rho);
}

double profile_psi_star(const Vec7& xi, const BoostParams& a) {
  return 4 * gamma(xi, a) / checked_denom(xi, a);
}

double ode_blowup(double t, double T) {
  if (!(t < T)) throw DomainError("ode_blowup requires t < T");
  return std::sqrt(2.0) / (T - t);
}

double blowup_solution(const SpacetimePoint& p, const BlowupFrame& fr, const BoostParams& a) {
  double s = fr.T - p.t;
  if (!(s > 0)) throw DomainError("evaluation point not before blowup time");
  Vec7 xi;
  for (int i = 0; i < 7; ++i) xi[i] = (p.x[i] - fr.x0[i]) / s;
  if (norm2(xi) > 1 + 1e-14) throw DomainError("evaluation point outside the backward lightcone");
  return profile_psi_star(xi, a) / s;
}

Jet7 psi_star_jet(const Vec7& xi, const BoostParams& a) {
  BoostCoeffs c = boost_coeffs(a);
  double g = c.A0 - dot(c.A, xi);
  double D = checked_denom(xi, a);
  Vec7 dg, dD;
  for (int i = 0; i < 7; ++i) {
    dg[i] = -c.A[i];
    dD[i] = -4 * g * c.A[i] + 2 * xi[i];
  }
  Jet7 J;
  J.v = 4 * g / D;
  double D2 = D * D, D3 = D2 * D;
  for (int i = 0; i < 7; ++i) J.g[i] = 4 * dg[i] / D - 4 * g * dD[i] / D2;
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) {
      double hD = 4 * c.A[i] * c.A[k] + (i == k ? 2.0 : 0.0);
      J.H[i][k] = -4 * (dg[i] * dD[k] + dD[i] * dg[k]) / D2 - 4 * g * hD / D2 + 8 * g * dD[i] * dD[k] / D3;
    }
  return J;
}

std::pair<double, double> static_pair(const Vec7& xi, const BoostParams& a) {
  Jet7 J = psi_star_jet(xi, a);
  return {J.v, dot(xi, J.g) + J.v};
}

double potential_V(const Vec7& xi, const BoostParams& a) {
  double p = profile_psi_star(xi, a);
  return 3 * p * p;
}

double static_residual(const Jet7& J, const Vec7& xi) {
  double s = 0;
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) s += ((i == k ? 1.0 : 0.0) - xi[i] * xi[k]) * J.H[i][k];
  return s - 4 * dot(xi, J.g) - 2 * J.v + J.v * J.v * J.v;
}

double static_residual(const Vec7& xi, const BoostParams& a) { return static_residual(psi_star_jet(xi, a), xi); }

double ode_profile_residual() {
  Jet7 J;
  J.v = std::sqrt(2.0);
  return static_residual(J, Vec7{});
}

Grad7 eigenfunction_h_grad(const Vec7& xi, const BoostParams& a) {
  BoostCoeffs c = boost_coeffs(a);
  double g = c.A0 - dot(c.A, xi);
  double D = checked_denom(xi, a);
  Grad7 r;
  r.v = 1 / (D * D);
  for (int i = 0; i < 7; ++i) r.g[i] = -2 * (-4 * g * c.A[i] + 2 * xi[i]) / (D * D * D);
  return r;
}

Grad7 eigenfunction_g_grad(int k, const Vec7& xi, const BoostParams& a) {
  if (k < 0 || k > 7) throw ArgumentError("eigenfunction_g index must be in 0..7");
  Jet7 J = psi_star_jet(xi, a);
  Grad7 r;
  if (k == 0) {
    r.v = (J.v + dot(xi, J.g)) / 4;
    for (int i = 0; i < 7; ++i) r.g[i] = (2 * J.g[i] + dot(J.H[i], xi)) / 4;
  } else {
    r.v = -J.g[k - 1] / 8;
    for (int i = 0; i < 7; ++i) r.g[i] = -J.H[i][k - 1] / 8;
  }
  return r;
}

Grad7 eigenfunction_q_grad(int j, const Vec7& xi, const BoostParams& a) {
  if (j < 1 || j > 7) throw ArgumentError("eigenfunction_q index must be in 1..7");
  BoostCoeffs c = boost_coeffs(a);
  BoostCoeffs dc = boost_coeffs_da(a, j - 1);
  double g = c.A0 - dot(c.A, xi);
  double D = checked_denom(xi, a);
  double s = norm2(xi);
  double cc = dc.A0 - dot(dc.A, xi);
  double N = s - 1 - 2 * g * g;
  Grad7 r;
  r.v = cc * N / (D * D);
  for (int i = 0; i < 7; ++i) {
    double dD = -4 * g * c.A[i] + 2 * xi[i];
    double dN = 2 * xi[i] + 4 * g * c.A[i];
    r.g[i] = -dc.A[i] * N / (D * D) + cc * dN / (D * D) - 2 * cc * N * dD / (D * D * D);
  }
  return r;
}

namespace {
Pair complete(const Grad7& u, const Vec7& xi, double lambda) {
  return {u.v, dot(xi, u.g) + (lambda + 1) * u.v};
}
}  // namespace

Pair eigenfunction_h(const Vec7& xi, const BoostParams& a) { return complete(eigenfunction_h_grad(xi, a), xi, 3); }
Pair eigenfunction_g(int k, const Vec7& xi, const BoostParams& a) {
  return complete(eigenfunction_g_grad(k, xi, a), xi, 1);
}
Pair eigenfunction_q(int j, const Vec7& xi, const BoostParams& a) {
  return complete(eigenfunction_q_grad(j, xi, a), xi, 0);
}

Jet1 radial_eigenfunction_jet(int ell, int lambda, double r) {
  double w = 1 + r * r;
  double w1 = 1 / w, w2 = w1 * w1, w3 = w2 * w1, w4 = w3 * w1;
  // building blocks: w^-2, rho w^-2
  double b0 = w2, b1 = -4 * r * w3, b2 = -4 * w3 + 24 * r * r * w4;
  double c0 = r * w2, c1 = w2 - 4 * r * r * w3, c2 = -12 * r * w3 + 24 * r * r * r * w4;
  if (ell == 0 && lambda == 3) return {b0, b1, b2};
  if (ell == 0 && lambda == 1) {
    // (1 - r^2) w^-2, written without cancellation near r = 1
    double s = 1 - r * r;
    return {s * w2, -2 * r * (3 - r * r) * w3, -6 * s * w3 + 12 * r * r * (3 - r * r) * w4};
  }
  if (ell == 1 && lambda == 1) return {c0, c1, c2};
  if (ell == 1 && lambda == 0) {
    // (3r - r^3) w^-2 = 4 r w^-2 - r w^-1
    double d0 = r * w1, d1 = w1 - 2 * r * r * w2, d2 = -6 * r * w2 + 8 * r * r * r * w3;
    return {4 * c0 - d0, 4 * c1 - d1, 4 * c2 - d2};
  }
  throw ArgumentError("radial eigenfunction only for (l,lambda) in {(0,1),(0,3),(1,0),(1,1)}");
}

double radial_eigenfunction(int ell, int lambda, double rho) { return radial_eigenfunction_jet(ell, lambda, rho).f; }

Pair unstable_data_h(const Vec7& x) {
  double w = 1 + norm2(x);
  return {1 / (w * w), 4 / (w * w * w)};
}

}  // namespace blowuplab
