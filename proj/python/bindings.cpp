#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blowuplab/appendix.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/evolution.hpp"
#include "blowuplab/io.hpp"
#include "blowuplab/nonhom.hpp"
#include "blowuplab/polyfield.hpp"
#include "blowuplab/polynomial.hpp"
#include "blowuplab/profiles.hpp"
#include "blowuplab/resolvent.hpp"
#include "blowuplab/spectral_scan.hpp"

namespace py = pybind11;
using namespace blowuplab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerics for self-similar blowup of the cubic wave equation in 7D";
  m.attr("__version__") = tool_version();

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("profile_U", &profile_U, py::arg("rho"), py::arg("d") = 7);
  m.def("profile_psi_star",
        [](const Vec7& xi, const Vec7& a) { return profile_psi_star(xi, BoostParams(a)); }, py::arg("xi"),
        py::arg("a") = Vec7{});
  m.def("potential_V", [](const Vec7& xi, const Vec7& a) { return potential_V(xi, BoostParams(a)); }, py::arg("xi"),
        py::arg("a") = Vec7{});
  m.def("radial_eigenfunction", &radial_eigenfunction, py::arg("ell"), py::arg("lam"), py::arg("rho"));

  m.def(
      "classify_lambda",
      [](int ell, cplx lam, int n_cap) {
        ClassifyOptions o;
        o.n_cap = n_cap;
        Classified c = classify_lambda(ell, lam, o);
        return py::dict(py::arg("label") = to_string(c.label), py::arg("ratio_tail") = c.evidence.ratio_tail,
                        py::arg("terminated") = c.evidence.polynomial_termination);
      },
      py::arg("ell"), py::arg("lam"), py::arg("n_cap") = 2000);
  m.def(
      "scan_eigenvalues",
      [](int ell_max, double re_min, double re_max, double im_min, double im_max, double step) {
        std::vector<std::pair<int, cplx>> out;
        for (const auto& e : scan_halfplane(ell_max, re_min, re_max, im_min, im_max, step).eigenvalues())
          out.emplace_back(e.ell, e.lambda);
        return out;
      },
      py::arg("ell_max"), py::arg("re_min"), py::arg("re_max"), py::arg("im_min"), py::arg("im_max"), py::arg("step"));

  m.def(
      "closed_form",
      [](const std::string& which, int n, int ell, cplx lam) {
        return appendix_closed_form(closed_form_from_string(which), n, ell, lam);
      },
      py::arg("which"), py::arg("n"), py::arg("ell"), py::arg("lam"));
  m.def("q_polynomial_sign_check", &q_polynomial_sign_check, py::arg("n"), py::arg("ell"));
  m.def("routh_hurwitz_check", &routh_hurwitz_check, py::arg("coefficients"),
        "coefficients ascending in the variable");

  m.def("constant_C", &constant_C);
  m.def(
      "nonhom_asymptotics",
      [](const std::string& name) {
        AsymptoticCheck a = nonhom_asymptotics(nonhom_from_string(name));
        return py::dict(py::arg("model") = a.model, py::arg("slope") = a.fit.slope, py::arg("r2") = a.fit.r2,
                        py::arg("limit_value") = a.limit_value, py::arg("pass") = a.pass);
      },
      py::arg("problem"));
  m.def(
      "resolvent_solve",
      [](int ell, const std::function<double(double)>& g, const std::vector<double>& rho) {
        return resolvent_solve(ell, g, rho).u;
      },
      py::arg("ell"), py::arg("g"), py::arg("rho"));

  m.def(
      "dissipativity_sweep",
      [](int samples, std::uint64_t seed, int max_degree) {
        std::vector<py::tuple> out;
        for (const auto& r : dissipativity_sweep(samples, seed, max_degree))
          out.push_back(py::make_tuple(r.sample_id, r.degree, mpz_class(r.margin.get_num()).get_str(),
                                       mpz_class(r.margin.get_den()).get_str(), r.ratio));
        return out;
      },
      py::arg("samples") = 200, py::arg("seed") = 1234, py::arg("max_degree") = 6,
      "rows (sample_id, degree, margin numerator, margin denominator, ratio); margins in units of pi^3");

  m.def(
      "discrete_spectrum",
      [](int ell, int N) { return discrete_spectrum(ell, N).unstable(); }, py::arg("ell"), py::arg("N") = 64,
      "resolved eigenvalues with real part above -0.1");
  m.def(
      "linear_growth_rate",
      [](int ell, int lam, int N, double dt, double t0, double t1) {
        EvolveConfig c;
        c.N = N;
        c.dt = dt;
        c.tau_end = t1;
        Trajectory t = evolve_linear(sample_eigenpair(ell, lam, radial_grid(N, ell)), c);
        return growth_fit(t, t0, t1).slope;
      },
      py::arg("ell"), py::arg("lam"), py::arg("N") = 48, py::arg("dt") = 2e-3, py::arg("t0") = 1.0, py::arg("t1") = 5.0);
}
