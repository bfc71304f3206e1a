#include <cmath>

#include "doctest.h"

#include "blowuplab/errors.hpp"
#include "blowuplab/spectral_scan.hpp"

using namespace blowuplab;

TEST_CASE("apply_T kernel") {
  for (double r = 0.1; r < 0.95; r += 0.1) {
    CHECK(std::abs(apply_T(0, 3.0, radial_eigenfunction_jet(0, 3, r), r)) < 1e-10);
    CHECK(std::abs(apply_T(1, 0.0, radial_eigenfunction_jet(1, 0, r), r)) < 1e-10);
  }
  CHECK(std::abs(apply_T(0, 2.0, radial_eigenfunction_jet(0, 3, 0.5), 0.5)) > 0.1);
  CHECK_THROWS_AS(apply_T(0, 1.0, CJet(), 1.0), DomainError);
}

TEST_CASE("heun transform") {
  CHECK(HeunMap::rho_of_x(1) == doctest::Approx(1));
  CHECK(HeunMap::rho_of_x(0) == doctest::Approx(0));
  HeunMap m = heun_transform(ProblemKind::EllZero, 0, 1.0);
  double ratio0 = 0;
  for (double r : {0.2, 0.5, 0.8}) {
    double x = HeunMap::x_of_rho(r);
    CJet f = m.f_from_y(r, 1 - x, -1, 0);
    double q = f.f.real() / radial_eigenfunction(0, 1, r);
    if (ratio0 == 0) ratio0 = q;
    CHECK(q == doctest::Approx(ratio0).epsilon(1e-10));
  }
  HeunMap g = heun_transform(ProblemKind::GenericEll, 2, cplx(0.5, 1));
  for (double r = 0.1; r <= 0.8; r += 0.1) CHECK(std::abs(apply_T(2, cplx(0.5, 1), g.series_solution(r, 200), r)) < 1e-8);
}

TEST_CASE("frobenius indices") {
  auto a = frobenius_indices(OdeProblem::ModeT, 1, 2, 0.7);
  CHECK(std::abs(a.first - 1.3) + std::abs(a.second) < 1e-12);
  for (int l : {0, 3}) {
    auto b = frobenius_indices(OdeProblem::ResolventV, 0, l, 0.0);
    CHECK(std::abs(b.first - double(l + 2)) + std::abs(b.second + double(3 + l)) < 1e-12);
    auto c = frobenius_indices(OdeProblem::ResolventV, 1, l, 0.0);
    CHECK(std::abs(c.first) + std::abs(c.second + 0.5) < 1e-12);
  }
  for (cplx lam : {cplx(0.3, 2), cplx(4, -1)}) {
    auto [p0, q0] = indicial_coefficients(OdeProblem::ModeT, 0, 3, lam);
    for (cplx s : {frobenius_indices(OdeProblem::ModeT, 0, 3, lam).first, frobenius_indices(OdeProblem::ModeT, 0, 3, lam).second})
      CHECK(std::abs(s * (s - 1.0) + p0 * s + q0) < 1e-12);
  }
}

TEST_CASE("classification") {
  Classified a = classify_lambda(0, 3.0);
  CHECK(a.label == Classification::Eigenvalue);
  CHECK(a.evidence.polynomial_termination);
  CHECK(classify_lambda(1, 1.0).label == Classification::Eigenvalue);
  CHECK(classify_lambda(0, 2.0).label == Classification::NotEigenvalue);
  CHECK(classify_lambda_kind(ProblemKind::SusyEllOne, 1, 0.0).label == Classification::NotEigenvalue);
  ClassifyOptions big;
  big.n_cap = 4000;
  big.tail_window = 400;
  for (cplx lam : {cplx(0.5, 0.5), cplx(1, 0), cplx(2.25, -3)})
    CHECK(classify_lambda(1, lam).label == classify_lambda(1, lam, big).label);
}

TEST_CASE("small scans") {
  ScanReport r = scan_halfplane(2, 0, 10, 0, 0, 0.5);
  int l2 = 0;
  for (const auto& e : r.entries)
    if (e.ell == 2) {
      ++l2;
      CHECK(e.label == Classification::NotEigenvalue);
    }
  CHECK(l2 == 21);
  CHECK(r.eigenvalues().size() == 4);
  ScanReport empty = scan_halfplane(-1, 0, 1, 0, 0, 0.5);
  CHECK(empty.entries.empty());
}
