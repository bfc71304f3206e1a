#pragma once
#include <complex>
#include <string>
#include <vector>

namespace blowuplab {

using cplx = std::complex<double>;

enum class ProblemKind { GenericEll, EllZero, SusyEllOne };
std::string to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

cplx coef_A(int n, int ell, cplx lam);
cplx coef_B(int n, int ell, cplx lam);
cplx susy_coef_A(int n, cplx lam);
cplx susy_coef_B(int n, cplx lam);

// recurrence a_{n+2} = A_n a_{n+1} + B_n a_n for the given kind (EllZero uses l = 0)
cplx kind_A(ProblemKind k, int ell, int n, cplx lam);
cplx kind_B(ProblemKind k, int ell, int n, cplx lam);

// a_n = mant[n] * exp(log_scale[n])
struct Series {
  std::vector<cplx> mant;
  std::vector<double> log_scale;
  cplx value(int n) const;
  // a_{n+1}/a_n, unaffected by rescaling
  cplx ratio(int n) const;
  double log_abs(int n) const;
};

Series series_coeffs(ProblemKind kind, int ell, cplx lam, int N);
cplx series_coeffs_ell0_closed(int n, cplx lam);

cplx ellzero_seed(cplx lam);
std::vector<cplx> ratio_seq(ProblemKind kind, int ell, cplx lam, int N);

cplx quasi_solution(ProblemKind kind, int ell, int n, cplx lam);
int delta_start(ProblemKind kind);

struct RatioState {
  ProblemKind kind = ProblemKind::GenericEll;
  int ell = 0;
  cplx lambda;
  int n_max = 0;
  std::vector<cplx> a, r, rtilde, delta, eps, C;  // delta/eps/C are meaningful from delta_start(kind)
};

RatioState delta_eps_C(ProblemKind kind, int ell, cplx lam, int N);
// max over start..N-1 of |delta_{n+1} - (eps_n - C_n delta_n/(1+delta_n))|
double delta_recursion_residual(const RatioState& s);

}  // namespace blowuplab
