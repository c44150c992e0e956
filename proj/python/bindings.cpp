#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msl/msl.hpp"

namespace py = pybind11;
using namespace msl;

namespace {

Measure make_measure(double a, double b, const std::vector<std::pair<double, cplx>>& atoms,
                     const std::vector<std::tuple<double, double, cplx>>& density) {
  std::vector<Atom> at;
  for (const auto& [x, w] : atoms) at.push_back({x, w});
  std::vector<DensityCell> cells;
  for (const auto& [x0, x1, v] : density) cells.push_back({x0, x1, v});
  return Measure(a, b, std::move(at), std::move(cells));
}

BoundaryConditionSpec separate_bc(double phi_a, double phi_b, const std::string& basis) {
  FunctionalBasis fb = FunctionalBasis::Auto;
  if (basis == "point") fb = FunctionalBasis::PointEvaluation;
  else if (basis == "left_limit") fb = FunctionalBasis::LeftLimitAtSupport;
  else if (basis != "auto") throw ValidationError("basis must be auto, point or left_limit");
  return {SeparateBC{phi_a, phi_b}, fb, fb};
}

}  // namespace

PYBIND11_MODULE(_msl, m) {
  m.doc() = "Sturm-Liouville problems with measure coefficients";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<Measure>(m, "Measure")
      .def(py::init(&make_measure), py::arg("a"), py::arg("b"), py::arg("atoms") = std::vector<std::pair<double, cplx>>{},
           py::arg("density") = std::vector<std::tuple<double, double, cplx>>{})
      .def_property_readonly("a", &Measure::a)
      .def_property_readonly("b", &Measure::b)
      .def("atom_mass", &Measure::atom_mass)
      .def("features", &Measure::features);

  m.def("total_variation", &total_variation, py::arg("mu"), py::arg("lo"), py::arg("hi"));

  py::class_<TauExpression>(m, "TauExpression")
      .def_property_readonly("a", &TauExpression::a)
      .def_property_readonly("b", &TauExpression::b)
      .def_property_readonly("alpha", &TauExpression::alpha)
      .def_property_readonly("beta", &TauExpression::beta)
      .def_property_readonly("one_point", &TauExpression::one_point);

  m.def(
      "build_tau",
      [](const Measure& rho, const Measure& sigma, const Measure& chi, bool one_point) {
        TauOptions o;
        o.one_point = one_point;
        return build_tau(rho, sigma, chi, o);
      },
      py::arg("varrho"), py::arg("varsigma"), py::arg("chi"), py::arg("one_point") = false);

  m.def(
      "solve",
      [](const TauExpression& tau, cplx z, double c, cplx d1, cplx d2, const std::vector<double>& xs) {
        const QuasiSolution u = solve_tau(tau, z, PiecewiseFunction(), c, d1, d2, LimitKind::AtX, xs);
        std::vector<std::pair<cplx, cplx>> out;
        for (double x : xs) out.emplace_back(u.f(x), u.f1(x));
        return out;
      },
      py::arg("tau"), py::arg("z"), py::arg("c"), py::arg("d1"), py::arg("d2"), py::arg("points"),
      "(u, u^[1]) at the given points");

  py::class_<SelfAdjointProblem>(m, "Problem")
      .def_readonly("tau", &SelfAdjointProblem::tau)
      .def_property_readonly("mul_dimension", [](const SelfAdjointProblem& p) { return p.mul.dimension; })
      .def_property_readonly("endpoint_a", [](const SelfAdjointProblem& p) { return to_string(p.class_a.tag); })
      .def_property_readonly("endpoint_b", [](const SelfAdjointProblem& p) { return to_string(p.class_b.tag); });

  m.def(
      "separate_problem",
      [](const TauExpression& tau, double phi_a, double phi_b, const std::string& basis) {
        return build_problem(tau, separate_bc(phi_a, phi_b, basis));
      },
      py::arg("tau"), py::arg("phi_a") = 0.0, py::arg("phi_b") = 0.0, py::arg("basis") = "auto");
  m.def(
      "coupled_problem",
      [](const TauExpression& tau, double phi, const Eigen::Matrix2d& r) {
        return build_problem(tau, BoundaryConditionSpec{CoupledBC{phi, r}});
      },
      py::arg("tau"), py::arg("phi"), py::arg("r"));
  m.def(
      "load_problem",
      [](const std::string& path) {
        ProblemSpec s = load_problem(path);
        return build_problem(s.tau, s.bc);
      },
      py::arg("path"));

  m.def("characteristic", &characteristic, py::arg("problem"), py::arg("z"));
  m.def(
      "eigenvalues",
      [](const SelfAdjointProblem& p, double lo, double hi, double tol) {
        const SpectralData d = eigenvalues(p, lo, hi, tol);
        return py::make_tuple(d.eigenvalues, d.norming, d.multiplicity);
      },
      py::arg("problem"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-10,
      "(eigenvalues, norming constants, multiplicities)");
  m.def("green_function", &green_function, py::arg("problem"), py::arg("z"), py::arg("x"), py::arg("y"));
  m.def("m_function", &m_function, py::arg("problem"), py::arg("z"), py::arg("tol") = 1e-10);
  m.def(
      "weyl_matrix", [](const SelfAdjointProblem& p, double x0, double phi, cplx z) {
        return weyl_matrix(p, x0, phi, z).matrix;
      },
      py::arg("problem"), py::arg("x0"), py::arg("phi"), py::arg("z"));

  m.def("from_jacobi", &from_jacobi, py::arg("p"), py::arg("q"));
  m.def(
      "jacobi_problem",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return build_problem(from_jacobi(p, q), jacobi_dirichlet_bc(p));
      },
      py::arg("p"), py::arg("q"), "Jacobi operator with f(0) = f(N+1) = 0");
  m.def("jacobi_matrix", &jacobi_matrix, py::arg("p"), py::arg("q"));
  m.def(
      "from_classical",
      [](const std::vector<std::tuple<double, double, double, double, double>>& cells, double a, double b) {
        std::vector<ClassicalCell> cs;
        for (const auto& [x0, x1, r, p, q] : cells) cs.push_back({x0, x1, r, p, q});
        return from_classical(cs, a, b);
      },
      py::arg("cells"), py::arg("a"), py::arg("b"), "cells are (x0, x1, r, p, q)");
  m.def("from_krein_string", &from_krein_string, py::arg("mass"), py::arg("length"));
  m.def(
      "from_peakon",
      [](const std::vector<std::pair<double, double>>& pk, double margin) {
        std::vector<Peakon> v;
        for (const auto& [x, mass] : pk) v.push_back({x, mass});
        return from_peakon(v, margin);
      },
      py::arg("peakons"), py::arg("margin") = 10.0);
}
