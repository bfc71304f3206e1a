#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "blowuplab/recurrence.hpp"

namespace blowuplab {

enum class ClosedForm {
  GenericC,      // C_n(l,lambda), n >= 3, l >= 2
  GenericEps,    // eps_n(l,lambda)
  Delta3,        // delta_3(l,lambda), l >= 2
  Delta5EllZero, // R3/R4, lambda only
  SusyC,         // n >= 1
  SusyEps,
  SusyDelta1
};

ClosedForm closed_form_from_string(const std::string& s);

cplx appendix_closed_form(ClosedForm which, int n, int ell, cplx lam);

// coefficients in lambda (ascending) of a tabulated polynomial at integer (n, l);
// names: P1 P2 P3 R1 R2 R3 R4 SC_num SE_num S_den D1_num D1_den
std::vector<mpz_class> appendix_poly_lambda(const std::string& name, long n, long ell);

std::uint64_t appendix_table_checksum();
std::uint64_t appendix_expected_checksum();
// checksum plus three recurrence cross-checks; runs once, throws NumericalError on failure
void appendix_validate();

struct BoundEntry {
  ProblemKind kind;
  int ell = 0;
  int n = 0;
  cplx lambda;
  std::string quantity;  // delta_start | eps | C | delta_prop | excluded
  double value = 0, bound = 0, slack = 0;
};

struct BoundReport {
  std::vector<BoundEntry> worst;      // per (kind, ell, quantity) the smallest-slack sample
  std::vector<BoundEntry> violations;
  std::vector<cplx> excluded;         // EllZero points inside the disks around 1 and 3
  int samples = 0;
  int n_cap = 0;
  double exclusion_radius = 0.05;
  bool ok() const { return violations.empty(); }
};

struct LambdaGrid {
  // imaginary segment [0, im_max] i with n_im points (both signs if symmetric) plus a box
  static std::vector<cplx> standard(double im_max, int n_im, double box_re, double box_im, double box_step);
};

BoundReport verify_bounds(ProblemKind kind, const std::vector<int>& ells, const std::vector<cplx>& lambdas,
                          int n_cap = 200, double exclusion_radius = 0.05);

}  // namespace blowuplab
