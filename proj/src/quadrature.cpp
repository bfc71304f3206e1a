#include "blowuplab/quadrature.hpp"
#include "blowuplab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace blowuplab {

namespace {
constexpr double kUmin = -40.0;

QuadResult gk(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double err = 0, l1 = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, lo, hi, 20, tol, &err, &l1);
  return {v, err};
}
}  // namespace

QuadResult integrate_clustered(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate_clustered(f, b, a, tol);
    return {-r.value, r.error};
  }
  const double h = (b - a) / 2;
  auto left = [&](double u) {
    double e = h * std::exp(u);
    return f(a + e) * e;
  };
  auto right = [&](double u) {
    double e = h * std::exp(u);
    return f(b - e) * e;
  };
  // stop short of an endpoint where s would round onto it
  auto umin = [&](double end) {
    double floor_gap = 8 * std::numeric_limits<double>::epsilon() * std::abs(end);
    return std::max(kUmin, std::log(std::max(floor_gap, 1e-300) / h));
  };
  QuadResult L = gk(left, umin(a), 0.0, tol), R = gk(right, umin(b), 0.0, tol);
  QuadResult out{L.value + R.value, L.error + R.error};
  if (!std::isfinite(out.value))
    throw NumericalError("quadrature produced a non-finite value on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  double scale = std::max(1.0, std::abs(out.value));
  if (out.error > 1e-8 * scale)
    throw NumericalError("quadrature error estimate " + std::to_string(out.error) + " too large on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  return integrate_clustered(f, a, b, tol).value;
}

}  // namespace blowuplab
