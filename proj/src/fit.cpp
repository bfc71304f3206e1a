#include "blowuplab/fit.hpp"
#include "blowuplab/errors.hpp"

#include <Eigen/Dense>

namespace blowuplab {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("linear_fit needs at least two points");
  const double n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.n = (int)x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - f.intercept - f.slope * x[i];
    sse += e * e;
  }
  f.r2 = syy > 0 ? 1 - sse / syy : 1.0;
  return f;
}

std::complex<double> extrapolate_inverse_powers(const std::vector<double>& n, const std::vector<std::complex<double>>& y,
                                                int k) {
  const int m = (int)n.size();
  Eigen::MatrixXd A(m, k + 1);
  Eigen::VectorXcd b(m);
  const double n0 = n.back();
  for (int i = 0; i < m; ++i) {
    double t = n0 / n[i];
    double p = 1;
    for (int j = 0; j <= k; ++j) {
      A(i, j) = p;
      p *= t;
    }
    b(i) = y[i];
  }
  auto qr = A.colPivHouseholderQr();
  Eigen::VectorXd re = qr.solve(b.real().eval()), im = qr.solve(b.imag().eval());
  return {re(0), im(0)};
}

}  // namespace blowuplab
