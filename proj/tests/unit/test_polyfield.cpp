#include <random>

#include "doctest.h"

#include "blowuplab/errors.hpp"
#include "blowuplab/polyfield.hpp"

using namespace blowuplab;

namespace {
const mpq_class kBall(16, 105), kSphere(16, 15);
}

TEST_CASE("monomial integrals") {
  CHECK(monomial_integral_ball(Exp7{}).q == kBall);
  CHECK(monomial_integral_sphere(Exp7{}).q == kSphere);
  CHECK(monomial_integral_ball(Exp7{1, 0, 0, 0, 0, 0, 0}).q == 0);
  CHECK(monomial_integral_sphere(Exp7{2, 1, 0, 0, 0, 0, 0}).q == 0);
  CHECK(monomial_integral_ball(Exp7{2, 0, 0, 0, 0, 0, 0}).q == mpq_class(16, 945));
  // int |xi|^2 over the ball is 7/9 of the volume
  CHECK(integrate_ball(MultiPoly7::radius_sq(), MultiPoly7::constant(1)).q == kBall * mpq_class(7, 9));
  // divergence theorem: int_B Laplacian p = int_S xi . grad p
  MultiPoly7 p = MultiPoly7::coord(0) * MultiPoly7::coord(0) * MultiPoly7::coord(1) * MultiPoly7::coord(1);
  CHECK(integrate_ball(p.laplacian(), MultiPoly7::constant(1)) == integrate_sphere(p.euler(), MultiPoly7::constant(1)));
}

TEST_CASE("hand values of the forms") {
  PairField c10{MultiPoly7::constant(1), {}}, c01{{}, MultiPoly7::constant(1)};
  CHECK(inner_H(c10, c10).q == kSphere);
  CHECK(inner_H(c01, c01).q == kSphere);
  CHECK(sobolev_norm_sq(c10).q == kBall);
  CHECK(sobolev_norm_sq({MultiPoly7::coord(0), {}}).q == mpq_class(16, 945) + kBall);
  CHECK(dissipativity_margin(c10).q == mpq_class(-8, 15));
  CHECK(dissipativity_margin(PairField{}).q == 0);
  auto [h, s] = equivalence_sample(c01);
  CHECK(h.q / s.q == 7);
  CHECK_THROWS_AS(equivalence_sample(PairField{}), ArgumentError);
}

TEST_CASE("generator") {
  PairField a = apply_Ltilde({MultiPoly7::constant(1), {}});
  CHECK(a.u1 == MultiPoly7::constant(-1));
  CHECK(a.u2.is_zero());
  PairField b = apply_Ltilde({{}, MultiPoly7::constant(1)});
  CHECK(b.u1 == MultiPoly7::constant(1));
  CHECK(b.u2 == MultiPoly7::constant(-2));
  PairField c = apply_Ltilde({MultiPoly7::radius_sq(), {}});
  CHECK(c.u1 == MultiPoly7::radius_sq().scaled(-3));
  CHECK(c.u2 == MultiPoly7::constant(14));
}

TEST_CASE("bilinearity and scaling") {
  std::mt19937_64 g(5);
  for (int k = 0; k < 5; ++k) {
    PairField u = random_pair(g, 4), v = random_pair(g, 4), w = random_pair(g, 4);
    CHECK(inner_H(u + w, v) == inner_H(u, v) + inner_H(w, v));
    CHECK(inner_H(u, v) == inner_H(v, u));
    CHECK(sobolev_norm_sq(u.scaled(3)).q == 9 * sobolev_norm_sq(u).q);
    CHECK(dissipativity_margin(u).q <= 0);
  }
}

TEST_CASE("sweep is deterministic and dissipative") {
  auto a = dissipativity_sweep(20, 99, 6, 4), b = dissipativity_sweep(20, 99, 6, 1);
  REQUIRE(a.size() == 20);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].margin == b[i].margin);
    CHECK(a[i].margin <= 0);
    CHECK(a[i].ratio > 0);
  }
}
