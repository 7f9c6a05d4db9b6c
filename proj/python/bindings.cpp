#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinres/eigen_transitions.hpp"
#include "spinres/errors.hpp"
#include "spinres/extraction.hpp"
#include "spinres/jahn_teller.hpp"
#include "spinres/perturbation.hpp"
#include "spinres/run.hpp"
#include "spinres/sensitivity.hpp"
#include "spinres/units.hpp"

namespace py = pybind11;
using namespace spinres;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spin-Hamiltonian resonance toolkit";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  // units
  m.def("hyperfine_to_joule", &units::hyperfine_to_joule, py::arg("value"));
  m.def("joule_to_hyperfine", &units::joule_to_hyperfine, py::arg("joules"));
  m.def(
      "convert_energy",
      [](double magnitude, const std::string& from, const std::string& to, double g) {
        const double j = units::to_joule(magnitude, units::parse_unit(from, g));
        return units::from_joule(j, units::parse_unit(to, g));
      },
      py::arg("magnitude"), py::arg("from_unit"), py::arg("to_unit"), py::arg("g") = 0.0);

  py::class_<SpinSystem>(m, "SpinSystem")
      .def(py::init([](double g_par, double g_perp, double A_par, double A_perp, double P_par, double gI_par,
                       double S, double I) {
             SpinSystem s;
             s.S = S;
             s.I = I;
             s.g_par = g_par;
             s.g_perp = g_perp;
             s.A_par = A_par;
             s.A_perp = A_perp;
             s.P_par = P_par;
             s.gI_par = gI_par;
             s.validate();
             return s;
           }),
           py::arg("g_par"), py::arg("g_perp"), py::arg("A_par") = 0.0, py::arg("A_perp") = 0.0,
           py::arg("P_par") = 0.0, py::arg("gI_par") = 0.0, py::arg("S") = 0.5, py::arg("I") = 1.5)
      .def_readwrite("S", &SpinSystem::S)
      .def_readwrite("I", &SpinSystem::I)
      .def_readwrite("g_par", &SpinSystem::g_par)
      .def_readwrite("g_perp", &SpinSystem::g_perp)
      .def_readwrite("A_par", &SpinSystem::A_par)
      .def_readwrite("A_perp", &SpinSystem::A_perp)
      .def_readwrite("P_par", &SpinSystem::P_par)
      .def_readwrite("gI_par", &SpinSystem::gI_par)
      .def_property_readonly("dim", &SpinSystem::dim);

  m.def(
      "build_hamiltonian",
      [](const SpinSystem& s, std::array<double, 3> b) { return build_hamiltonian(s, {b[0], b[1], b[2]}); },
      py::arg("system"), py::arg("field"));
  m.def(
      "eigensystem",
      [](const ComplexMatrix& h) {
        auto es = eigensystem(h);
        return py::make_tuple(es.values, es.vectors);
      },
      py::arg("h"));

  py::class_<TransitionLine>(m, "TransitionLine")
      .def_readonly("b_center", &TransitionLine::b_center)
      .def_readonly("frequency", &TransitionLine::frequency)
      .def_readonly("mi", &TransitionLine::mi)
      .def_readonly("intensity", &TransitionLine::intensity)
      .def_readonly("lower", &TransitionLine::lower)
      .def_readonly("upper", &TransitionLine::upper);

  m.def(
      "resonance_fields",
      [](const SpinSystem& s, double freq, double b_min, double b_max, std::array<double, 3> dir) {
        return resonance_fields(s, freq, {b_min, b_max}, {dir[0], dir[1], dir[2]});
      },
      py::arg("system"), py::arg("freq"), py::arg("b_min"), py::arg("b_max"),
      py::arg("direction") = std::array<double, 3>{0, 0, 1});

  // perturbation
  m.def("first_order_field", &first_order_field, py::arg("b0"), py::arg("A"), py::arg("mi"), py::arg("g"));
  m.def("multiplet_width", &multiplet_width, py::arg("A"), py::arg("g"));

  // extraction
  m.def("g_from_line", &g_from_line, py::arg("freq"), py::arg("b"));
  m.def("A_from_width", &A_from_width, py::arg("g"), py::arg("width"), py::arg("sign") = -1);
  m.def(
      "fit_bohr_magneton",
      [](const std::vector<std::array<double, 3>>& pts) {
        std::vector<FitPoint> fp;
        for (const auto& p : pts) fp.push_back({p[0], p[1], p[2]});
        const auto f = fit_bohr_magneton(fp);
        return py::dict(py::arg("beta") = f.beta, py::arg("rel_err") = f.rel_err, py::arg("residuals") = f.residuals);
      },
      py::arg("points"), "points are (A [J], g, width [T]) tuples");
  m.def(
      "quadrupole_from_multiplet", [](const std::vector<double>& a) { return quadrupole_from_multiplet(a); },
      py::arg("A_per_mi"));
  m.def(
      "r3_from_P",
      [](double p, double Q_barn, double I, double R_q) {
        const auto r = r3_from_P(p, {Q_barn, I, R_q});
        return py::make_tuple(r.r3_q, r.r3_unscreened);
      },
      py::arg("P_par"), py::arg("Q_barn") = -0.211, py::arg("I") = 1.5, py::arg("R_q") = 0.15);
  m.def(
      "P_from_r3", [](double r3, double Q_barn, double I) { return P_from_r3(r3, {Q_barn, I, 0.15}); },
      py::arg("r3_au"), py::arg("Q_barn") = -0.211, py::arg("I") = 1.5);
  m.def("mean_values", &mean_values, py::arg("g_par"), py::arg("g_perp"), py::arg("A_par"), py::arg("A_perp"));

  // Jahn-Teller
  m.def(
      "jt_gfactors",
      [](double lod, double phi, double g_s) {
        const auto g = jt::jt_gfactors({lod, phi, g_s});
        return py::make_tuple(g.g1, g.g2, g.g3);
      },
      py::arg("lambda_over_delta"), py::arg("phi"), py::arg("g_s") = units::constants().free_electron_g);
  m.def(
      "delta_g",
      [](double lod) {
        const auto d = jt::delta_g(lod);
        return py::make_tuple(d.parallel, d.perpendicular);
      },
      py::arg("lambda_over_delta"));
  m.def(
      "mixing_angle_from_widths",
      [](const std::vector<double>& w) {
        const auto e = jt::mixing_angle_from_widths(w);
        return py::make_tuple(e.phi, e.admixture);
      },
      py::arg("widths"));

  // sensitivity
  m.def(
      "n_min",
      [](double freq, double q_loaded, double volume, double temperature, double agg_width, double noise_ratio,
         double filling_factor) {
        ResonatorMode mode{"", freq, q_loaded, volume, filling_factor};
        DetectionSetup setup;
        setup.temperature = temperature;
        setup.agg_width = agg_width;
        setup.noise_ratio = noise_ratio;
        return n_min(mode, setup);
      },
      py::arg("freq"), py::arg("q_loaded"), py::arg("volume"), py::arg("temperature"), py::arg("agg_width"),
      py::arg("noise_ratio") = 1.0, py::arg("filling_factor") = 1.0);
  m.def(
      "concentration_ppb",
      [](double n, double volume, double a, double b, double c, int z) {
        return concentration_ppb(n, volume, {a, b, c, z, 1});
      },
      py::arg("n"), py::arg("volume"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("formula_units") = 2);

  // pipeline
  m.def(
      "run_config",
      [](const std::string& text, const std::string& base_dir, int threads) {
        const auto cfg = parse_config_text(text, base_dir);
        py::gil_scoped_release release;
        const auto r = run(cfg, {threads});
        return std::make_pair(r.artifact, r.summary);
      },
      py::arg("config_text"), py::arg("base_dir") = "", py::arg("threads") = 1,
      "Parse and run a JSON config; returns (artifact, summary).");

  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
}
