#pragma once
#include <string>
#include <utility>
#include <vector>

#include "blowuplab/profiles.hpp"
#include "blowuplab/recurrence.hpp"

namespace blowuplab {

struct CJet {
  cplx f, df, d2f;
  CJet() = default;
  CJet(cplx a, cplx b, cplx c) : f(a), df(b), d2f(c) {}
  CJet(const Jet1& j) : f(j.f), df(j.df), d2f(j.d2f) {}
};

// (1-r^2) f'' + [6/r - 2(lambda+2) r] f' - [(lambda+1)(lambda+2) + l(l+5)/r^2 - 48/(1+r^2)^2] f
cplx apply_T(int ell, cplx lam, const CJet& f, double rho);
// twice reduced l = 1 operator
cplx apply_T_susy(cplx lam, const CJet& f, double rho);

struct HeunMap {
  ProblemKind kind = ProblemKind::GenericEll;
  int ell = 0;
  cplx lam;
  static double x_of_rho(double rho);
  static double rho_of_x(double x);
  // f(rho) = x^{l/2} (2-x)^{(lambda+1)/2} y(x), or x^2 (2-x)^{lambda/2} y(x) for the reduced problem
  CJet f_from_y(double rho, cplx y, cplx dy, cplx d2y) const;
  // truncated series solution y = sum_{n<=N} a_n x^n mapped back to rho
  CJet series_solution(double rho, int N) const;
};
HeunMap heun_transform(ProblemKind kind, int ell, cplx lam);

enum class OdeProblem { ModeT, SusyReduced, ResolventU, ResolventV };
OdeProblem ode_problem_from_string(const std::string& s);
// Frobenius indices at endpoint 0 or 1 (real part descending); lambda ignored for the resolvent problems (fixed 5/2)
std::pair<cplx, cplx> frobenius_indices(OdeProblem p, int endpoint, int ell, cplx lam);
// indicial polynomial coefficients (p0, q0): s(s-1) + p0 s + q0
std::pair<cplx, cplx> indicial_coefficients(OdeProblem p, int endpoint, int ell, cplx lam);

enum class Classification { Eigenvalue, NotEigenvalue, Undecided };
std::string to_string(Classification c);

struct ClassifyOptions {
  int n_cap = 2000;
  int tail_window = 200;
  double tol = 1e-3;
  double mismatch_tol = 1e-8;
};

struct Evidence {
  cplx ratio_tail;       // extrapolated limit of the forward ratios
  cplx minimal_ratio;    // limit of the minimal solution's ratios (near 1/2)
  bool polynomial_termination = false;
  double casoratian_mismatch = 0;
  int match_index = 0;
};

struct Classified {
  ProblemKind kind = ProblemKind::GenericEll;
  int ell = 0;
  cplx lambda;
  Classification label = Classification::Undecided;
  Evidence evidence;
};

Classified classify_lambda(int ell, cplx lam, const ClassifyOptions& opt = {});
Classified classify_lambda_kind(ProblemKind kind, int ell, cplx lam, const ClassifyOptions& opt = {});

struct ScanReport {
  ProblemKind kind = ProblemKind::GenericEll;
  int ell_max = -1;
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0, step = 0;
  int n_cap = 0;
  std::vector<Classified> entries;
  std::vector<Classified> eigenvalues() const;
  int count(Classification c) const;
};

std::vector<double> grid_axis(double lo, double hi, double step);
ScanReport scan_halfplane(int ell_max, double re_min, double re_max, double im_min, double im_max, double step,
                          const ClassifyOptions& opt = {}, ProblemKind kind = ProblemKind::GenericEll,
                          unsigned threads = 0);

}  // namespace blowuplab
