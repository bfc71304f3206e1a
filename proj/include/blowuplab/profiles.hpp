#pragma once
#include <array>
#include <utility>

namespace blowuplab {

using Vec7 = std::array<double, 7>;
using Mat7 = std::array<Vec7, 7>;
using Pair = std::array<double, 2>;

struct BoostParams {
  Vec7 a{};
  double a_max = 0.2;
  BoostParams() = default;
  // throws AdmissibilityError if |a| > a_max or the denominator is not positive on the ball
  explicit BoostParams(const Vec7& a, double a_max = 0.2);
};

struct BoostCoeffs {
  double A0 = 1.0;
  Vec7 A{};
};

struct SpacetimePoint {
  double t = 0.0;
  Vec7 x{};
};

struct BlowupFrame {
  double T = 1.0;
  Vec7 x0{};
};

BoostCoeffs boost_coeffs(const BoostParams& a);
// d/da_j of (A0, A)
BoostCoeffs boost_coeffs_da(const BoostParams& a, int j);

double gamma(const Vec7& xi, const BoostParams& a);
double profile_U(double rho, int d);
double profile_psi_star(const Vec7& xi, const BoostParams& a);
double ode_blowup(double t, double T);
double blowup_solution(const SpacetimePoint& p, const BlowupFrame& frame, const BoostParams& a);

// value, gradient and Hessian of psi*_a
struct Jet7 {
  double v = 0.0;
  Vec7 g{};
  Mat7 H{};
};
Jet7 psi_star_jet(const Vec7& xi, const BoostParams& a);

std::pair<double, double> static_pair(const Vec7& xi, const BoostParams& a);
double potential_V(const Vec7& xi, const BoostParams& a);

// second component of the similarity-coordinate system evaluated on a static pair:
// (delta - xi xi):Hess psi - 4 xi.grad psi - 2 psi + psi^3
double static_residual(const Jet7& psi, const Vec7& xi);
double static_residual(const Vec7& xi, const BoostParams& a);
double ode_profile_residual();

Pair eigenfunction_h(const Vec7& xi, const BoostParams& a);
Pair eigenfunction_g(int k, const Vec7& xi, const BoostParams& a);
Pair eigenfunction_q(int j, const Vec7& xi, const BoostParams& a);

// first components with gradients; used for the eigen-pair identity checks
struct Grad7 {
  double v = 0.0;
  Vec7 g{};
};
Grad7 eigenfunction_h_grad(const Vec7& xi, const BoostParams& a);
Grad7 eigenfunction_g_grad(int k, const Vec7& xi, const BoostParams& a);
Grad7 eigenfunction_q_grad(int j, const Vec7& xi, const BoostParams& a);

struct Jet1 {
  double f = 0.0, df = 0.0, d2f = 0.0;
};
Jet1 radial_eigenfunction_jet(int ell, int lambda, double rho);
double radial_eigenfunction(int ell, int lambda, double rho);

Pair unstable_data_h(const Vec7& x);

double norm2(const Vec7& x);
double dot(const Vec7& x, const Vec7& y);

}  // namespace blowuplab
