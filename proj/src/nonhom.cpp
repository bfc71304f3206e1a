#include "blowuplab/nonhom.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/quadrature.hpp"
#include "blowuplab/spectral_scan.hpp"

#include <algorithm>
#include <cmath>

namespace blowuplab {

NonHomProblem nonhom_from_string(const std::string& s) {
  if (s == "NonHom1" || s == "nonhom1" || s == "1") return NonHomProblem::NonHom1;
  if (s == "NonHom2" || s == "nonhom2" || s == "2") return NonHomProblem::NonHom2;
  if (s == "NonHom3" || s == "nonhom3" || s == "3") return NonHomProblem::NonHom3;
  if (s == "NonHom4" || s == "nonhom4" || s == "4") return NonHomProblem::NonHom4;
  throw ArgumentError("unknown nonhomogeneous problem '" + s + "'");
}

std::string to_string(NonHomProblem p) {
  switch (p) {
    case NonHomProblem::NonHom1: return "NonHom1";
    case NonHomProblem::NonHom2: return "NonHom2";
    case NonHomProblem::NonHom3: return "NonHom3";
    case NonHomProblem::NonHom4: return "NonHom4";
  }
  return "?";
}

NonHomSpec nonhom_spec(NonHomProblem p) {
  switch (p) {
    case NonHomProblem::NonHom1: return {0, 1, 0.5, 0};
    case NonHomProblem::NonHom2: return {0, 3, 0.5, -2};
    case NonHomProblem::NonHom3: return {1, 1, 1.0, 0};
    case NonHomProblem::NonHom4: return {1, 0, 1.0, 1};
  }
  throw ArgumentError("bad problem");
}

double nonhom_rhs(NonHomProblem p, double rho) {
  NonHomSpec s = nonhom_spec(p);
  Jet1 f = radial_eigenfunction_jet(s.ell, s.lambda, rho);
  return 2 * rho * f.df + (2 * s.lambda + 3) * f.f;
}

Jet1 FundamentalSystem::u1hat(double rho) const { return radial_eigenfunction_jet(spec.ell, spec.lambda, rho); }

double FundamentalSystem::wronskian_closed(double rho) const {
  return std::pow(rho, -6) * std::pow(1 - rho * rho, spec.wexp);
}

std::pair<double, double> FundamentalSystem::u2hat(double rho) const {
  if (rho <= 0 || rho >= 1) throw DomainError("u2hat needs 0 < rho < 1");
  auto integrand = [&](double s) {
    double f = radial_eigenfunction_jet(spec.ell, spec.lambda, s).f;
    return wronskian_closed(s) / (f * f);
  };
  double J = integrate(integrand, spec.base, rho);
  Jet1 u = u1hat(rho);
  return {u.f * J, u.df * J + wronskian_closed(rho) / u.f};
}

std::pair<double, double> FundamentalSystem::exponents_at_0() const {
  auto r = frobenius_indices(OdeProblem::ModeT, 0, spec.ell, cplx(spec.lambda, 0));
  return {r.first.real(), r.second.real()};
}

std::pair<double, double> FundamentalSystem::exponents_at_1() const {
  auto r = frobenius_indices(OdeProblem::ModeT, 1, spec.ell, cplx(spec.lambda, 0));
  return {r.first.real(), r.second.real()};
}

FundamentalSystem fundamental_system(NonHomProblem p) { return {p, nonhom_spec(p)}; }

NonHomSolution nonhom_solve(NonHomProblem p, const std::vector<double>& rho) {
  FundamentalSystem fs = fundamental_system(p);
  const NonHomSpec& sp = fs.spec;
  NonHomSolution out;
  out.tag = p;
  out.rho = rho;
  // 1/(p W) = s^6 (1-s^2)^(lambda-2)
  auto inv_pw = [&](double s) { return std::pow(s, 6) * std::pow(1 - s * s, sp.lambda - 2); };
  // running integrals, accumulated piecewise when the grid is increasing
  double prev = 0, I1 = 0, I2 = 0;
  for (double r : rho) {
    if (!(r > 0 && r < 1)) throw DomainError("nonhom_solve needs grid points in (0,1)");
    if (r < prev) prev = I1 = I2 = 0;
    I1 += integrate([&](double s) { return fs.u1hat(s).f * nonhom_rhs(p, s) * inv_pw(s); }, prev, r);
    I2 += integrate([&](double s) { return fs.u2hat(s).first * nonhom_rhs(p, s) * inv_pw(s); }, prev, r);
    prev = r;
    Jet1 u1 = fs.u1hat(r);
    auto [u2, du2] = fs.u2hat(r);
    double u = u2 * I1 - u1.f * I2;
    double du = du2 * I1 - u1.df * I2;
    double lam = sp.lambda, L = sp.ell * (sp.ell + 5.0);
    double Q = 6 / r - 2 * (lam + 2) * r;
    double w = 1 + r * r;
    double R = -((lam + 1) * (lam + 2) + L / (r * r) - 48 / (w * w));
    double d2u = (nonhom_rhs(p, r) - Q * du - R * u) / (1 - r * r);
    out.u.push_back(u);
    out.du.push_back(du);
    out.d2u.push_back(d2u);
  }
  return out;
}

std::vector<double> refined_grid_to_one(double lo_exp, double hi_exp, int m) {
  if (m < 2) throw ArgumentError("grid needs at least two points");
  std::vector<double> g(m);
  for (int k = 0; k < m; ++k) g[k] = 1 - std::pow(10.0, -(lo_exp + (hi_exp - lo_exp) * k / (m - 1)));
  return g;
}

AsymptoticCheck nonhom_asymptotics(NonHomProblem p, int m, double r2_min) {
  auto grid = refined_grid_to_one(2, 4, m);
  NonHomSolution s = nonhom_solve(p, grid);
  AsymptoticCheck c;
  c.tag = p;
  std::vector<double> x, y;
  if (p == NonHomProblem::NonHom2) {
    c.model = "u~(1-rho)^-1";
    for (int k = 0; k < m; ++k) {
      x.push_back(std::log(1 - grid[k]));
      y.push_back(std::log(std::abs(s.u[k])));
    }
    c.fit = linear_fit(x, y);
    c.limit_value = s.u.back() * (1 - grid.back());
    c.pass = c.fit.r2 >= r2_min && std::abs(c.fit.slope + 1) < 0.05 && std::abs(c.limit_value) > 1e-3;
    return c;
  }
  const std::vector<double>& target = (p == NonHomProblem::NonHom4) ? s.d2u : s.du;
  c.model = (p == NonHomProblem::NonHom4) ? "d2u~log" : "du~log";
  for (int k = 0; k < m; ++k) {
    x.push_back(std::log(1 - grid[k]));
    y.push_back(target[k]);
  }
  c.fit = linear_fit(x, y);
  c.limit_value = target.back() / x.back();
  c.pass = c.fit.r2 >= r2_min && std::abs(c.fit.slope) > 0.01;
  return c;
}

double constant_C() {
  return -2 * integrate([](double s) { return std::pow(s, 6) / std::pow(1 + s * s, 4); }, 0.0, 1.0, 1e-15);
}

}  // namespace blowuplab
