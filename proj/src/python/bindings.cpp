#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tdrd/cli.hpp"
#include "tdrd/datasets.hpp"
#include "tdrd/error.hpp"
#include "tdrd/lyapunov.hpp"
#include "tdrd/parabolic.hpp"
#include "tdrd/polyrec.hpp"
#include "tdrd/reaction.hpp"
#include "tdrd/regions.hpp"
#include "tdrd/simulate.hpp"
#include "tdrd/spectral.hpp"

namespace py = pybind11;
using namespace tdrd;

namespace {

// (times, x, states[t, component, point]) as plain Python objects.
py::dict trajectory_dict(const Trajectory& t) {
  py::list states;
  for (const auto& s : t.states) states.append(py::cast(Eigen::MatrixXd(s)));
  py::dict d;
  d["space"] = to_string(t.space);
  d["dt"] = t.dt;
  d["times"] = t.times;
  d["x"] = t.x;
  d["states"] = states;
  return d;
}

Integrator parse_integrator(const std::string& s) {
  if (s == "rk4") return Integrator::Rk4;
  if (s == "explicit-euler") return Integrator::ExplicitEuler;
  throw ConfigError("integrator must be rk4 or explicit-euler");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reaction-diffusion systems with tridiagonal 2-Toeplitz diffusion";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParabolicityError>(m, "ParabolicityError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<ToeplitzParams>(m, "ToeplitzParams")
      .def(py::init([](double a1, double a2, double b1, double g1, double b2, double g2, int mm) {
             ToeplitzParams p{a1, a2, b1, b2, g1, g2, mm};
             p.validate();
             return p;
           }),
           py::arg("alpha1"), py::arg("alpha2"), py::arg("beta1"), py::arg("gamma1"), py::arg("beta2"),
           py::arg("gamma2"), py::arg("m"))
      .def_readwrite("alpha1", &ToeplitzParams::alpha1)
      .def_readwrite("alpha2", &ToeplitzParams::alpha2)
      .def_readwrite("beta1", &ToeplitzParams::beta1)
      .def_readwrite("beta2", &ToeplitzParams::beta2)
      .def_readwrite("gamma1", &ToeplitzParams::gamma1)
      .def_readwrite("gamma2", &ToeplitzParams::gamma2)
      .def_readwrite("m", &ToeplitzParams::m)
      .def("__repr__", [](const ToeplitzParams& p) {
        std::ostringstream s;
        s << "ToeplitzParams(alpha1=" << p.alpha1 << ", alpha2=" << p.alpha2 << ", beta1=" << p.beta1
          << ", gamma1=" << p.gamma1 << ", beta2=" << p.beta2 << ", gamma2=" << p.gamma2 << ", m=" << p.m << ")";
        return s.str();
      });

  py::class_<DerivedConstants>(m, "DerivedConstants")
      .def_readonly("beta", &DerivedConstants::beta)
      .def_readonly("s", &DerivedConstants::s);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("params", &Spectrum::params)
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("eigenvectors", &Spectrum::eigenvectors)
      .def_readonly("max_residual", &Spectrum::max_residual)
      .def_readonly("oracle_max_deviation", &Spectrum::oracle_max_deviation)
      .def_property_readonly("provenance", [](const Spectrum& s) {
        std::vector<std::string> out;
        for (const auto& p : s.provenance) out.push_back(p.label());
        return out;
      });

  py::class_<MinorReport>(m, "MinorReport")
      .def_readonly("minors", &MinorReport::minors)
      .def_readonly("first_failure", &MinorReport::first_failure);

  py::class_<ParabolicityReport>(m, "ParabolicityReport")
      .def_readonly("ratio", &ParabolicityReport::ratio)
      .def_readonly("threshold", &ParabolicityReport::threshold)
      .def_readonly("margin", &ParabolicityReport::margin)
      .def_readonly("satisfied", &ParabolicityReport::satisfied)
      .def_readonly("minors_positive", &ParabolicityReport::minors_positive)
      .def_readonly("minors", &ParabolicityReport::minors);

  py::class_<RegionSignature>(m, "RegionSignature")
      .def(py::init([](std::vector<int> signs) {
             RegionSignature s{std::move(signs)};
             s.validate(s.size());
             return s;
           }),
           py::arg("signs"))
      .def_readonly("signs", &RegionSignature::signs)
      .def_static("all_positive", &RegionSignature::all_positive)
      .def("__eq__", [](const RegionSignature& a, const RegionSignature& b) { return a == b; });

  py::class_<Diagonalizer>(m, "Diagonalizer")
      .def_readonly("P", &Diagonalizer::P)
      .def_readonly("inv_transpose", &Diagonalizer::inv_transpose)
      .def_readonly("eigenvalues", &Diagonalizer::eigenvalues)
      .def_readonly("signature", &Diagonalizer::signature)
      .def_readonly("similarity_residual", &Diagonalizer::similarity_residual);

  py::class_<Membership>(m, "Membership")
      .def_readonly("member", &Membership::member)
      .def_readonly("slacks", &Membership::slacks);

  py::class_<QuadraticReactionSystem>(m, "QuadraticReactionSystem")
      .def(py::init(&QuadraticReactionSystem::make), py::arg("upsilon"), py::arg("sigma"))
      .def_readonly("upsilon", &QuadraticReactionSystem::upsilon)
      .def_readonly("sigma", &QuadraticReactionSystem::sigma)
      .def("__call__", &eval_reaction, py::arg("U"))
      .def("__len__", &QuadraticReactionSystem::size);

  py::class_<QuasipositivityReport>(m, "QuasipositivityReport")
      .def_readonly("ok", &QuasipositivityReport::ok)
      .def_readonly("min_value", &QuasipositivityReport::min_value)
      .def_readonly("worst_component", &QuasipositivityReport::worst_component)
      .def_readonly("samples", &QuasipositivityReport::samples);

  py::class_<A3Report>(m, "A3Report")
      .def_readonly("ok", &A3Report::ok)
      .def_readonly("C2", &A3Report::C2)
      .def_readonly("D", &A3Report::D)
      .def_readonly("linear", &A3Report::linear)
      .def_readonly("quadratic", &A3Report::quadratic);

  py::class_<LyapunovSpec>(m, "LyapunovSpec")
      .def(py::init([](int p_m, std::vector<double> theta, std::vector<int> p_ks) {
             LyapunovSpec s{p_m, std::move(theta), std::move(p_ks)};
             s.validate();
             return s;
           }),
           py::arg("p_m"), py::arg("theta"), py::arg("p_ks"))
      .def_readonly("p_m", &LyapunovSpec::p_m)
      .def_readonly("theta", &LyapunovSpec::theta)
      .def_readonly("p_ks", &LyapunovSpec::p_ks);

  py::class_<PositivityReport>(m, "PositivityReport")
      .def_readonly("satisfied", &PositivityReport::satisfied)
      .def_readonly("K", &PositivityReport::K)
      .def_readonly("K_sign", &PositivityReport::K_sign)
      .def_readonly("log10_abs_K", &PositivityReport::log10_abs_K)
      .def_readonly("a_minors", &PositivityReport::a_minors);

  m.def("derived_constants", &derived_constants, py::arg("params"));
  m.def("build_matrix", &build_matrix, py::arg("params"), py::arg("transposed") = false);
  m.def("spectrum", &spectrum, py::arg("params"));
  m.def("eigenvalues", [](const ToeplitzParams& p) { return eigenvalues(p).eigenvalues; }, py::arg("params"));
  m.def("oracle_eigenvalues",
        [](const ToeplitzParams& p) { return oracle_eigenvalues(toeplitz_bands(p, true)); }, py::arg("params"));
  m.def("zeros_p", [](int n) { return zeros_p(n).zeros; }, py::arg("n"));
  m.def("zeros_q", [](int n, double beta) { return zeros_q(n, beta).zeros; }, py::arg("n"), py::arg("beta"));
  m.def("check_parabolicity", &check_parabolicity, py::arg("params"));

  m.def("diagonalizer", &diagonalizer, py::arg("spectrum"), py::arg("signature"));
  m.def("region_membership",
        py::overload_cast<const Eigen::MatrixXd&, const Eigen::VectorXd&, const RegionSignature&>(
            &region_membership),
        py::arg("columns"), py::arg("X"), py::arg("signature"));
  m.def("enclosing_regions", &enclosing_regions, py::arg("spectrum"), py::arg("X"));

  m.def("transform_reaction",
        py::overload_cast<const Eigen::MatrixXd&, const QuadraticReactionSystem&>(&transform_reaction),
        py::arg("P"), py::arg("system"));
  m.def("check_quasipositivity", &check_quasipositivity, py::arg("system"), py::arg("box"),
        py::arg("samples_per_face"), py::arg("seed") = 0);
  m.def("check_A3", &check_A3, py::arg("system"), py::arg("D"));
  m.def("detect_conserved_pairs", &detect_conserved_pairs, py::arg("system"));

  m.def("search_theta", &search_theta, py::arg("eigenvalues"), py::arg("p_ks"), py::arg("p_m"),
        py::arg("max_level") = 8, py::arg("max_evaluations") = 5'000'000);
  m.def("check_condition_1_12", &check_condition_1_12, py::arg("eigenvalues"), py::arg("spec"));
  m.def("eval_H", &eval_H, py::arg("spec"), py::arg("W"));

  m.def(
      "simulate",
      [](const ToeplitzParams& params, const QuadraticReactionSystem& system, const RegionSignature& signature,
         const Eigen::VectorXd& initial, double t_final, std::optional<double> dt, const std::string& integrator,
         bool spatial, int grid_points, std::optional<double> perturbation, double sample_interval) {
        SimulationConfig c;
        c.mode = spatial ? SimulationMode::Pde1d : SimulationMode::Ode0d;
        c.t_final = t_final;
        c.dt = dt;
        c.integrator = parse_integrator(integrator);
        c.grid_points = grid_points;
        c.sample_interval = sample_interval;
        c.initial.base = initial;
        if (spatial) c.initial.perturbation = Perturbation{perturbation, 1};
        const auto P = diagonalizer(spectrum(params), signature);
        const auto r = simulate(c, params, system, P);
        py::dict d;
        d["dt"] = r.dt;
        d["steps"] = r.steps;
        d["original"] = trajectory_dict(*r.original);
        d["diagonal"] = trajectory_dict(*r.diagonal);
        d["discrepancy"] = compare_original_diagonal(*r.original, *r.diagonal, P);
        d["invariant"] = invariance_monitor(*r.diagonal).invariant;
        d["P"] = P.P;
        return d;
      },
      py::arg("params"), py::arg("system"), py::arg("signature"), py::arg("initial"), py::arg("t_final") = 10.0,
      py::arg("dt") = py::none(), py::arg("integrator") = "rk4", py::arg("spatial") = false,
      py::arg("grid_points") = 41, py::arg("perturbation") = py::none(), py::arg("sample_interval") = 0.1);

  auto ds = m.def_submodule("datasets", "Worked five-component example");
  ds.def("ex5_params", &datasets::ex5_params);
  ds.def("ex5_initial", &datasets::ex5_initial);
  ds.def("ex5_printed_P", &datasets::ex5_printed_P);
  ds.def("ex5_tables", &datasets::ex5_tables);
  ds.def("ex5_diagonal_system", &datasets::ex5_diagonal_system);
  ds.def("ex5_signature", &datasets::ex5_signature);
  ds.def("ex5_consistent_system", &datasets::ex5_consistent_system);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command in-process; returns (exit_code, stdout, stderr).");
}
