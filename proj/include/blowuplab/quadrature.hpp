#pragma once
#include <functional>

namespace blowuplab {

struct QuadResult {
  double value = 0, error = 0;
};

// adaptive Gauss-Kronrod on [a,b] after the substitutions s = a + h e^u (left half) and
// s = b - h e^u (right half), which cluster nodes at both endpoints; u is truncated at -40,
// so an integrable s^-p endpoint singularity loses O((h e^-40)^(1-p))
QuadResult integrate_clustered(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace blowuplab
