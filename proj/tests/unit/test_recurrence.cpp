#include <cmath>

#include "doctest.h"

#include "blowuplab/appendix.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/polynomial.hpp"
#include "blowuplab/recurrence.hpp"

using namespace blowuplab;

TEST_CASE("recurrence coefficients") {
  for (int l : {0, 1, 3})
    for (cplx lam : {cplx(0.5, 0), cplx(1, 2)}) {
      cplx want = (lam * lam + 2.0 * (2.0 * l + 5) * lam + 3.0 * (l * l + 4.0 * l - 13)) / (4.0 * (2.0 * l + 7));
      CHECK(std::abs(coef_A(-1, l, lam) - want) < 1e-13);
    }
  CHECK(std::abs(coef_A(0, 1, 0.0) - 3.0 / 11) < 1e-15);
  CHECK(std::abs(coef_B(0, 1, 0.0) - 2.0 / 11) < 1e-15);
  CHECK(std::abs(coef_A(1000000, 2, 1.0) - 1.5) < 1e-5);
  CHECK(std::abs(coef_B(1000000, 2, 1.0) + 0.5) < 1e-5);
  CHECK(std::abs(susy_coef_A(1000000, 1.0) - 1.5) < 1e-5);
  CHECK(std::abs(susy_coef_B(1000000, 1.0) + 0.5) < 1e-5);
}

TEST_CASE("series and ratios agree") {
  for (ProblemKind k : {ProblemKind::GenericEll, ProblemKind::EllZero, ProblemKind::SusyEllOne})
    for (cplx lam : {cplx(0.7, 0.3), cplx(2.5, -1)}) {
      int l = k == ProblemKind::GenericEll ? 3 : 0;
      Series s = series_coeffs(k, l, lam, 300);
      auto r = ratio_seq(k, l, lam, 300);
      for (int n = 0; n < 299; ++n) CHECK(std::abs(s.ratio(n) - r[n]) <= 1e-10 * std::abs(r[n]));
    }
}

TEST_CASE("explicit low coefficients") {
  CHECK(std::abs(series_coeffs(ProblemKind::EllZero, 0, 3.0, 4).value(1)) < 1e-13);
  CHECK(std::abs(series_coeffs(ProblemKind::EllZero, 0, 1.0, 4).value(1) + 1.0) < 1e-13);
  CHECK(std::abs(series_coeffs(ProblemKind::GenericEll, 1, 0.0, 4).value(1) + 2.0 / 3) < 1e-13);
  CHECK(std::abs(series_coeffs(ProblemKind::GenericEll, 1, 0.0, 4).value(2)) < 1e-13);
  CHECK(std::abs(ratio_seq(ProblemKind::SusyEllOne, 1, 0.0, 3)[0] - 12.0 / 13) < 1e-14);
}

TEST_CASE("delta recursion and limits") {
  for (ProblemKind k : {ProblemKind::GenericEll, ProblemKind::EllZero, ProblemKind::SusyEllOne}) {
    RatioState s = delta_eps_C(k, k == ProblemKind::GenericEll ? 2 : 0, cplx(0.5, 3), 2000);
    CHECK(delta_recursion_residual(s) < 1e-10);
    CHECK(std::abs(s.C.back() + 0.5) < 1e-2);
  }
  RatioState s = delta_eps_C(ProblemKind::SusyEllOne, 1, 0.0, 10);
  CHECK(std::abs(s.delta[1] - 3.0 / 44) < 1e-12);
}

TEST_CASE("appendix closed forms") {
  appendix_validate();
  CHECK(appendix_table_checksum() == appendix_expected_checksum());
  cplx r = appendix_closed_form(ClosedForm::Delta5EllZero, 5, 0, 0.0);
  CHECK(std::abs(r + 2726072037.0 / 13392819504.0) < 1e-12);
  cplx d1 = appendix_closed_form(ClosedForm::SusyDelta1, 1, 1, 0.0);
  CHECK(std::abs(d1 - 3.0 / 44) < 1e-15);
  RatioState s = delta_eps_C(ProblemKind::GenericEll, 2, 0.0, 10);
  CHECK(std::abs(appendix_closed_form(ClosedForm::Delta3, 3, 2, 0.0) - s.delta[3]) < 1e-10);
  CHECK_THROWS_AS(appendix_closed_form(ClosedForm::GenericC, 1, 2, 0.0), ArgumentError);
}

TEST_CASE("polynomial certificates") {
  CHECK(q_polynomial_sign_check(0, 0));
  CHECK(q_polynomial_sign_check(5, 3));
  CHECK(q_polynomial_sign_check(20, 10));
  CHECK(routh_hurwitz_check({1.0, 1.0}));
  CHECK_FALSE(routh_hurwitz_check({-1.0, 1.0}));
  CHECK(routh_hurwitz_exact({mpq_class(2), mpq_class(3), mpq_class(1)}));
  CHECK_FALSE(routh_hurwitz_exact({mpq_class(-2), mpq_class(1), mpq_class(1)}));
  CHECK_THROWS_AS(routh_hurwitz_check({0.0, 0.0}), ArgumentError);
  auto P = appendix_poly_lambda("P2", 3, 2);
  QPoly q;
  std::vector<cplx> c;
  for (auto& z : P) {
    q.push_back(mpq_class(z));
    c.push_back(z.get_d());
  }
  CHECK(routh_hurwitz_exact(q));
  CHECK(routh_hurwitz_check(c));
  for (cplx root : poly_roots(c)) CHECK(root.real() < 0);
}

TEST_CASE("bound verification") {
  auto lams = LambdaGrid::standard(50, 26, 2, 2, 0.5);
  BoundReport g = verify_bounds(ProblemKind::GenericEll, {2, 5}, lams, 100);
  CHECK(g.ok());
  BoundReport z = verify_bounds(ProblemKind::EllZero, {0}, {1.0, cplx(1.01, 0), cplx(0, 10)}, 100);
  CHECK(z.ok());
  CHECK(z.excluded.size() == 2);
}
