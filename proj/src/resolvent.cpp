#include "blowuplab/resolvent.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/quadrature.hpp"

#include <cmath>

namespace blowuplab {

namespace {
double at(const std::vector<double>& p, int k) { return k < (int)p.size() ? p[k] : 0.0; }
double Ik(const FrobeniusSeries& f, int k, double sig) {
  return at(f.P, k) * sig * (sig - 1) + at(f.Q, k) * sig + at(f.R, k);
}
}  // namespace

void FrobeniusSeries::build() {
  c.assign(n_max + 1, 0.0);
  c[0] = 1;
  int deg = (int)std::max({P.size(), Q.size(), R.size()});
  for (int n = 1; n <= n_max; ++n) {
    double i0 = Ik(*this, 0, n + s);
    if (std::abs(i0) < 1e-14) throw NumericalError("resonant Frobenius exponents need a logarithmic term");
    double acc = 0;
    for (int k = 1; k < deg && k <= n; ++k) acc += c[n - k] * Ik(*this, k, n - k + s);
    c[n] = -acc / i0;
  }
}

void FrobeniusSeries::eval(double x, double& y, double& dy, double& d2y) const {
  // sum over x^{n+s}
  double S0 = 0, S1 = 0, S2 = 0, xn = 1;
  double big = 0;
  for (int n = 0; n <= n_max; ++n) {
    double t = c[n] * xn, e = n + s;
    S0 += t;
    S1 += t * e;
    S2 += t * e * (e - 1);
    big = std::max(big, std::abs(t * e * e) + std::abs(t));
    if (n > 8 && std::abs(t) * (1 + e * e) < 1e-18 * big) break;
    xn *= x;
    if (n == n_max) throw NumericalError("Frobenius series did not converge at x=" + std::to_string(x));
  }
  double xs = std::pow(x, s);
  y = xs * S0;
  dy = xs * S1 / x;
  d2y = xs * S2 / (x * x);
}

ResolventBasis::ResolventBasis(int l) : ell(l) {
  if (l < 0) throw ArgumentError("ell must be >= 0");
  double L = (l + 2.0) * (l + 3.0);
  // in z = rho^2: z^2 (-4+4z) V'' + z (-6+12z) V' + (L + 15 z/4) V = 0
  for (auto* f : {&z_reg, &z_sing}) {
    f->P = {-4, 4};
    f->Q = {-6, 12};
    f->R = {L, 3.75};
  }
  z_reg.s = (l + 2.0) / 2;
  z_sing.s = -(l + 3.0) / 2;
  // in w = 1-z: w^2 (-4(1-w)^2) V'' + w (-(6-12w)(1-w)) V' + w (L + 15/4 - 15 w/4) V = 0
  for (auto* f : {&w_reg, &w_sing}) {
    f->P = {-4, 8, -4};
    f->Q = {-6, 18, -12};
    f->R = {0, L + 3.75, -3.75};
  }
  w_reg.s = 0;
  w_sing.s = -0.5;
  for (auto* f : {&z_reg, &z_sing, &w_reg, &w_sing}) f->build();

  // matching at z = w = 1/2, derivatives in z (d/dz = -d/dw)
  double a0, a1, a2, b0, b1, b2, p0, p1, p2, c0, c1, c2;
  z_reg.eval(0.5, p0, p1, p2);
  z_sing.eval(0.5, c0, c1, c2);
  w_reg.eval(0.5, a0, a1, a2);
  w_sing.eval(0.5, b0, b1, b2);
  a1 = -a1;
  b1 = -b1;
  double det = a0 * b1 - a1 * b0;
  alpha = (p0 * b1 - p1 * b0) / det;
  beta = (a0 * p1 - a1 * p0) / det;
  double det2 = p0 * c1 - p1 * c0;
  gamma = (a0 * c1 - a1 * c0) / det2;
  delta = (p0 * a1 - p1 * a0) / det2;
  // W in z at 1/2 of (psi0, psi1): p0 a1 - p1 a0; in rho: 2 rho W_z
  double rho = std::sqrt(0.5);
  double Wrho = 2 * rho * (p0 * a1 - p1 * a0);
  C = Wrho * std::pow(0.5, 1.5) * 0.5;
}

void ResolventBasis::psi0(double rho, double& v, double& dv) const {
  double z = rho * rho, V, Vz, d2;
  if (z <= 0.5) {
    z_reg.eval(z, V, Vz, d2);
  } else {
    double a0, a1, b0, b1;
    w_reg.eval(1 - z, a0, a1, d2);
    w_sing.eval(1 - z, b0, b1, d2);
    V = alpha * a0 + beta * b0;
    Vz = -(alpha * a1 + beta * b1);
  }
  v = V;
  dv = 2 * rho * Vz;
}

void ResolventBasis::psi1(double rho, double& v, double& dv) const {
  double z = rho * rho, V, Vz, d2;
  if (z >= 0.5) {
    w_reg.eval(1 - z, V, Vz, d2);
    Vz = -Vz;
  } else {
    double p0, p1, c0, c1;
    z_reg.eval(z, p0, p1, d2);
    z_sing.eval(z, c0, c1, d2);
    V = gamma * p0 + delta * c0;
    Vz = gamma * p1 + delta * c1;
  }
  v = V;
  dv = 2 * rho * Vz;
}

double ResolventBasis::wronskian(double rho) const {
  double a, da, b, db;
  psi0(rho, a, da);
  psi1(rho, b, db);
  return a * db - da * b;
}

double ResolventBasis::wronskian_closed(double rho) const {
  return C * std::pow(1 - rho * rho, -1.5) / (rho * rho);
}

ResolventSolution resolvent_solve(int ell, const std::function<double(double)>& g, const std::vector<double>& rho) {
  ResolventBasis B(ell);
  ResolventSolution out;
  out.ell = ell;
  out.rho = rho;
  // v = rho^2 u solves the v-equation with source rho^2 g; coefficient of v'' is -(1-rho^2)
  auto k1 = [&](double s) {
    double b, db;
    B.psi1(s, b, db);
    return b * s * s * g(s) / (B.wronskian_closed(s) * (1 - s * s));
  };
  auto k0 = [&](double s) {
    double a, da;
    B.psi0(s, a, da);
    return a * s * s * g(s) / (B.wronskian_closed(s) * (1 - s * s));
  };
  for (double r : rho) {
    if (!(r > 0 && r < 1)) throw DomainError("resolvent_solve needs grid points in (0,1)");
    double K1 = integrate(k1, r, 1.0), K0 = integrate(k0, 0.0, r);
    double a, da, b, db;
    B.psi0(r, a, da);
    B.psi1(r, b, db);
    double v = -a * K1 - b * K0, dv = -da * K1 - db * K0;
    out.u.push_back(v / (r * r));
    out.du.push_back(dv / (r * r) - 2 * v / (r * r * r));
  }
  return out;
}

}  // namespace blowuplab
