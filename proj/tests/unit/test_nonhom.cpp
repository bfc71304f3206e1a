#include <cmath>
#include <numbers>

#include "doctest.h"

#include "blowuplab/errors.hpp"
#include "blowuplab/nonhom.hpp"
#include "blowuplab/quadrature.hpp"
#include "blowuplab/resolvent.hpp"

using namespace blowuplab;

TEST_CASE("quadrature with endpoint singularities") {
  CHECK(integrate([](double s) { return 1 / std::sqrt(s); }, 0, 1) == doctest::Approx(2).epsilon(1e-8));
  CHECK(integrate([](double s) { return std::pow(s, -0.25); }, 0, 1) == doctest::Approx(4.0 / 3).epsilon(1e-12));
  CHECK(integrate([](double s) { return std::log(1 - s); }, 0, 1) == doctest::Approx(-1).epsilon(1e-12));
  CHECK_THROWS_AS(integrate([](double) { return NAN; }, 0, 1), NumericalError);
}

TEST_CASE("constant C") {
  double oracle = 11.0 / 24.0 - 5 * std::numbers::pi / 32;
  CHECK(std::abs(constant_C() - oracle) < 1e-12);
  CHECK(std::abs(kConstantC - oracle) < 1e-12);
  CHECK(constant_C() < 0);
  CHECK(6 * constant_C() + 0.5 > 0);
}

TEST_CASE("fundamental systems") {
  for (auto p : {NonHomProblem::NonHom1, NonHomProblem::NonHom2, NonHomProblem::NonHom3, NonHomProblem::NonHom4}) {
    FundamentalSystem fs = fundamental_system(p);
    for (double r = 0.1; r < 0.91; r += 0.1) {
      Jet1 u1 = fs.u1hat(r);
      auto [u2, du2] = fs.u2hat(r);
      double W = u1.f * du2 - u1.df * u2;
      CHECK(std::abs(W / fs.wronskian_closed(r) - 1) < 1e-9);
    }
    CHECK(nonhom_from_string(to_string(p)) == p);
  }
  auto e0 = fundamental_system(NonHomProblem::NonHom1).exponents_at_0();
  CHECK(e0.first == 0);
  CHECK(e0.second == -5);
  CHECK_THROWS_AS(nonhom_solve(NonHomProblem::NonHom1, {1.0}), DomainError);
}

TEST_CASE("nonhomogeneous solution satisfies the equation") {
  std::vector<double> grid;
  for (int k = 1; k < 20; ++k) grid.push_back(k / 20.0);
  NonHomSolution s = nonhom_solve(NonHomProblem::NonHom3, grid);
  for (size_t k = 1; k + 1 < grid.size(); ++k) {
    double h = grid[k + 1] - grid[k];
    CHECK(s.du[k] == doctest::Approx((s.u[k + 1] - s.u[k - 1]) / (2 * h)).epsilon(1e-2));
  }
}

TEST_CASE("singular asymptotics") {
  for (auto p : {NonHomProblem::NonHom1, NonHomProblem::NonHom2, NonHomProblem::NonHom3, NonHomProblem::NonHom4}) {
    AsymptoticCheck a = nonhom_asymptotics(p);
    CHECK(a.pass);
    CHECK(a.fit.r2 >= 0.999);
  }
  CHECK(std::abs(nonhom_asymptotics(NonHomProblem::NonHom2).fit.slope + 1) < 0.05);
}

TEST_CASE("resolvent") {
  std::vector<double> grid;
  for (int k = 1; k < 20; ++k) grid.push_back(k / 20.0);
  auto z = resolvent_solve(0, [](double) { return 0.0; }, grid);
  for (double u : z.u) CHECK(u == 0);
  auto one = resolvent_solve(0, [](double) { return 1.0; }, grid);
  for (double u : one.u) CHECK(u == doctest::Approx(4.0 / 63).epsilon(1e-9));
  for (int l : {0, 1, 3}) {
    ResolventBasis b(l);
    for (double r : {0.1, 0.5, 0.9}) CHECK(std::abs(b.wronskian(r) / b.wronskian_closed(r) - 1) < 1e-10);
    // manufactured solution u = rho^l / (1 + rho^2)
    auto g = [l](double r) {
      double w = 1 + r * r, L = l * (l + 5.0);
      double u = std::pow(r, l) / w;
      double du = l * std::pow(r, l - 1) / w - 2 * std::pow(r, l + 1) / (w * w);
      double d2u = l * (l - 1.0) * std::pow(r, l - 2) / w - 2 * (2 * l + 1.0) * std::pow(r, l) / (w * w) +
                   8 * std::pow(r, l + 2) / (w * w * w);
      if (l == 0) d2u = -2 / (w * w) + 8 * r * r / (w * w * w);
      if (l == 1) d2u = -6 * r / (w * w) + 8 * r * r * r / (w * w * w);
      return -(1 - r * r) * d2u - 6 / r * du + 9 * r * du + (L / (r * r) + 63.0 / 4) * u;
    };
    auto s = resolvent_solve(l, g, grid);
    for (size_t k = 0; k < grid.size(); ++k)
      CHECK(std::abs(s.u[k] - std::pow(grid[k], l) / (1 + grid[k] * grid[k])) < 1e-8);
  }
}
