#pragma once
#include <functional>
#include <vector>

namespace blowuplab {

// Frobenius series about x=0 for x^2 P(x) y'' + x Q(x) y' + R(x) y = 0 with polynomial P,Q,R
struct FrobeniusSeries {
  std::vector<double> P, Q, R;
  double s = 0;
  int n_max = 400;
  std::vector<double> c;
  void build();
  // value, first and second derivative at x > 0
  void eval(double x, double& y, double& dy, double& d2y) const;
};

// fundamental system of -(1-rho^2) v'' - (2/rho) v' + 5 rho v' + ((l+2)(l+3)/rho^2 + 15/4) v = 0
struct ResolventBasis {
  int ell = 0;
  FrobeniusSeries z_reg, z_sing, w_reg, w_sing;
  double alpha = 0, beta = 0;   // psi0 = alpha phi_a + beta phi_b on z > 1/2
  double gamma = 0, delta = 0;  // psi1 = gamma psi0 + delta chi on z < 1/2
  double C = 0;                 // W(psi0, psi1)(rho) = C (1-rho^2)^{-3/2} rho^{-2}
  explicit ResolventBasis(int ell);
  // psi0 regular at 0, psi1 regular at 1; returns value and rho-derivative
  void psi0(double rho, double& v, double& dv) const;
  void psi1(double rho, double& v, double& dv) const;
  double wronskian(double rho) const;
  double wronskian_closed(double rho) const;
};

struct ResolventSolution {
  int ell = 0;
  std::vector<double> rho, u, du;
};

// bounded solution of -(1-rho^2) u'' - (6/rho) u' + 9 rho u' + (l(l+5)/rho^2 + 63/4) u = g at lambda = 5/2
ResolventSolution resolvent_solve(int ell, const std::function<double(double)>& g, const std::vector<double>& rho);

}  // namespace blowuplab
