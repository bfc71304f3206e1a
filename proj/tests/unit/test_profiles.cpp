#include <cmath>
#include <random>

#include "doctest.h"

#include "blowuplab/errors.hpp"
#include "blowuplab/profiles.hpp"

using namespace blowuplab;

namespace {
Vec7 e(int i, double s = 1) {
  Vec7 v{};
  v[i] = s;
  return v;
}
Vec7 ball_point(std::mt19937_64& g, double rmax) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u;
  Vec7 x;
  double s = 0;
  for (double& v : x) s += (v = n(g)) * v;
  double r = rmax * std::pow(u(g), 1.0 / 7) / std::sqrt(s);
  for (double& v : x) v *= r;
  return x;
}
}  // namespace

TEST_CASE("profile_U closed values") {
  CHECK(profile_U(0, 7) == doctest::Approx(4).epsilon(1e-15));
  CHECK(profile_U(1, 7) == doctest::Approx(2).epsilon(1e-15));
  CHECK(profile_U(0, 5) == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(profile_U(0, 4), DomainError);
}

TEST_CASE("gamma and boosts") {
  double s = 0.15;
  BoostParams a(e(0, s));
  CHECK(gamma(Vec7{}, a) == doctest::Approx(boost_coeffs(a).A0));
  CHECK(gamma(e(0), a) == doctest::Approx(std::exp(-s)).epsilon(1e-14));
  std::mt19937_64 g(7);
  for (int k = 0; k < 100; ++k) {
    BoostCoeffs c = boost_coeffs(BoostParams(ball_point(g, 0.2)));
    double q = c.A0 * c.A0;
    for (double v : c.A) q -= v * v;
    CHECK(std::abs(q - 1) < 1e-14);
  }
  CHECK_THROWS_AS(BoostParams(e(0, 0.5)), AdmissibilityError);
}

TEST_CASE("psi star and static pair") {
  BoostParams z;
  Vec7 x{0.3, -0.2, 0.1, 0, 0.4, 0, 0.1};
  CHECK(profile_psi_star(x, z) == doctest::Approx(profile_U(std::sqrt(norm2(x)), 7)).epsilon(1e-15));
  CHECK(profile_psi_star(Vec7{}, z) == doctest::Approx(4));
  double s = 0.1, c = std::cosh(s);
  CHECK(profile_psi_star(Vec7{}, BoostParams(e(0, s))) == doctest::Approx(4 * c / (2 * c * c - 1)).epsilon(1e-14));
  auto [p1, p2] = static_pair(Vec7{}, z);
  CHECK(p1 == doctest::Approx(4));
  CHECK(p2 == doctest::Approx(4));
  auto [b1, b2] = static_pair(e(2), z);
  CHECK(b1 == doctest::Approx(2));
  CHECK(std::abs(b2) < 1e-14);
}

TEST_CASE("blowup solution") {
  BoostParams z;
  BlowupFrame f;
  CHECK(blowup_solution({0.0, Vec7{}}, f, z) == doctest::Approx(4));
  CHECK(blowup_solution({0.5, Vec7{}}, f, z) == doctest::Approx(8));
  CHECK(ode_blowup(0, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(blowup_solution({0.5, e(0, 0.8)}, f, z), DomainError);
}

TEST_CASE("potential") {
  BoostParams z;
  CHECK(potential_V(Vec7{}, z) == doctest::Approx(48));
  CHECK(potential_V(e(3), z) == doctest::Approx(12));
  for (double r : {0.2, 0.7}) CHECK(potential_V(e(1, r), z) == doctest::Approx(48 / std::pow(1 + r * r, 2)));
}

TEST_CASE("explicit eigenfunctions") {
  BoostParams z;
  auto h = eigenfunction_h(Vec7{}, z);
  CHECK(h[0] == doctest::Approx(1));
  CHECK(h[1] == doctest::Approx(4));
  auto g = eigenfunction_g(0, Vec7{}, z);
  CHECK(g[0] == doctest::Approx(1));
  CHECK(g[1] == doctest::Approx(2));
  CHECK(eigenfunction_q(1, e(0, 0.5), z)[0] == doctest::Approx(22.0 / 25));
  CHECK_THROWS_AS(eigenfunction_q(0, Vec7{}, z), ArgumentError);
  CHECK_THROWS_AS(eigenfunction_g(8, Vec7{}, z), ArgumentError);
  CHECK(radial_eigenfunction(0, 1, 1) == doctest::Approx(0));
  CHECK(radial_eigenfunction(0, 3, 0) == doctest::Approx(1));
  CHECK(radial_eigenfunction(1, 0, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(radial_eigenfunction(2, 1, 0.5), ArgumentError);
  auto u = unstable_data_h(Vec7{});
  CHECK(u[0] == 1);
  CHECK(u[1] == 4);
  auto u1 = unstable_data_h(e(0));
  CHECK(u1[0] == doctest::Approx(0.25));
  CHECK(u1[1] == doctest::Approx(0.5));
  CHECK(unstable_data_h(e(0, 0.4))[0] == doctest::Approx(eigenfunction_h(e(0, 0.4), z)[0]));
}

TEST_CASE("radial jets match finite differences") {
  for (auto [l, lam] : {std::pair{0, 1}, {0, 3}, {1, 0}, {1, 1}})
    for (double r : {0.2, 0.5, 0.9}) {
      double h = 1e-5;
      Jet1 j = radial_eigenfunction_jet(l, lam, r);
      double fp = radial_eigenfunction(l, lam, r + h), fm = radial_eigenfunction(l, lam, r - h);
      CHECK(j.df == doctest::Approx((fp - fm) / (2 * h)).epsilon(1e-8));
      CHECK(j.d2f == doctest::Approx((fp - 2 * j.f + fm) / (h * h)).epsilon(1e-4));
    }
}

TEST_CASE("profile residual on random boosts") {
  std::mt19937_64 g(11);
  for (int k = 0; k < 5; ++k) {
    BoostParams a(ball_point(g, 0.2));
    for (int i = 0; i < 100; ++i) CHECK(std::abs(static_residual(ball_point(g, 1.0), a)) < 1e-10);
  }
  CHECK(std::abs(ode_profile_residual()) < 1e-14);
}
