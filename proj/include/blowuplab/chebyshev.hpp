#pragma once
#include <cmath>
#include <numbers>
#include <vector>

#include <quadmath.h>

namespace blowuplab {

using quad = __float128;

namespace rmath {
inline double cos(double x) { return std::cos(x); }
inline quad cos(quad x) { return cosq(x); }
inline double abs(double x) { return std::fabs(x); }
inline quad abs(quad x) { return fabsq(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline quad sqrt(quad x) { return sqrtq(x); }
template <class R>
R pi();
template <>
inline double pi<double>() { return std::numbers::pi; }
template <>
inline quad pi<quad>() { return acosq(quad(-1)); }
}  // namespace rmath

// Chebyshev-Gauss-Lobatto collocation on [-1,1] with M = 2N+1 intervals, folded onto the N+1
// positive nodes using the parity (-1)^ell of the channel; rho = 0 is never a node
template <class Real>
struct RadialGrid {
  int N = 0;
  int ell = 0;
  int parity = 1;
  std::vector<Real> rho;     // increasing, rho.back() == 1
  std::vector<Real> D1, D2;  // (N+1)^2 row-major
  std::vector<double> weights;  // integral over [0,1] of an even integrand
  std::vector<double> origin_w;  // value at rho = 0 = sum origin_w[i] f[i]

  int size() const { return N + 1; }
  void apply(const std::vector<Real>& D, const Real* x, Real* y) const;
  double origin_value(const std::vector<double>& f) const;
  // Chebyshev coefficients of the parity extension, k = 0..2N+1
  std::vector<double> cheb_coeffs(const std::vector<double>& f) const;
  // fraction of coefficient energy in the top quarter of modes
  double tail_fraction(const std::vector<double>& f) const;
};

template <class Real>
RadialGrid<Real> make_radial_grid(int N, int ell);

extern template struct RadialGrid<double>;
extern template struct RadialGrid<quad>;
extern template RadialGrid<double> make_radial_grid<double>(int, int);
extern template RadialGrid<quad> make_radial_grid<quad>(int, int);

}  // namespace blowuplab
