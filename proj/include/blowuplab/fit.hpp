#pragma once
#include <complex>
#include <vector>

namespace blowuplab {

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
  int n = 0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// least-squares fit y_n = L + c1/n + ... + ck/n^k, returns L
std::complex<double> extrapolate_inverse_powers(const std::vector<double>& n, const std::vector<std::complex<double>>& y,
                                                int k);

}  // namespace blowuplab
