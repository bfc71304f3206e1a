#pragma once
#include <string>
#include <utility>
#include <vector>

#include "blowuplab/fit.hpp"
#include "blowuplab/profiles.hpp"

namespace blowuplab {

enum class NonHomProblem { NonHom1, NonHom2, NonHom3, NonHom4 };
NonHomProblem nonhom_from_string(const std::string& s);
std::string to_string(NonHomProblem p);

struct NonHomSpec {
  int ell = 0;
  int lambda = 0;
  double base = 0.5;    // lower limit of the reduction-of-order integral for u2hat
  int wexp = 0;         // W = rho^-6 (1-rho^2)^wexp
};
NonHomSpec nonhom_spec(NonHomProblem p);

// right-hand side 2 rho f' + (2 lambda + 3) f of the equation T_l(lambda) u = rhs
double nonhom_rhs(NonHomProblem p, double rho);

struct FundamentalSystem {
  NonHomProblem tag;
  NonHomSpec spec;
  Jet1 u1hat(double rho) const;
  // value and first derivative
  std::pair<double, double> u2hat(double rho) const;
  double wronskian_closed(double rho) const;
  std::pair<double, double> exponents_at_0() const;
  std::pair<double, double> exponents_at_1() const;
};
FundamentalSystem fundamental_system(NonHomProblem p);

struct NonHomSolution {
  NonHomProblem tag;
  std::vector<double> rho, u, du, d2u;
};
NonHomSolution nonhom_solve(NonHomProblem p, const std::vector<double>& rho);

// 1 - 10^{-lo_exp - (hi_exp-lo_exp) k/(m-1)}
std::vector<double> refined_grid_to_one(double lo_exp, double hi_exp, int m);

struct AsymptoticCheck {
  NonHomProblem tag;
  std::string model;  // "du~log", "u~(1-rho)^-1", "d2u~log"
  LinearFit fit;
  double limit_value = 0;  // u (1-rho) at the finest point for the power model
  bool pass = false;
};
AsymptoticCheck nonhom_asymptotics(NonHomProblem p, int m = 40, double r2_min = 0.999);

double constant_C();
constexpr double kConstantC = -0.032540518790071860176;

}  // namespace blowuplab
