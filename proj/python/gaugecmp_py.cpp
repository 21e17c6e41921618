#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "gaugecmp/config.hpp"
#include "gaugecmp/constants.hpp"
#include "gaugecmp/gauge_audit.hpp"
#include "gaugecmp/hydrogenic.hpp"
#include "gaugecmp/probability.hpp"
#include "gaugecmp/scenario.hpp"

namespace py = pybind11;
using namespace gaugecmp;

namespace {

PyObject* config_error_type = nullptr;

Vec3 to_vec(const std::array<double, 3>& v) { return Vec3(v[0], v[1], v[2]); }

RunConfig build_config(const std::string& scenario, const std::string& config_text, const std::string& preset,
                       unsigned workers) {
  RunConfig cfg;
  const auto s = parse_scenario(scenario);
  if (!preset.empty()) {
    cfg = figure_preset(preset);
    if (cfg.scenario != s) throw ConfigError("preset " + preset + " is a " + to_string(cfg.scenario) + " run");
  }
  cfg.scenario = s;
  if (!config_text.empty()) cfg = apply_config(IniDocument::parse(config_text), cfg);
  if (workers > 0) cfg.workers = workers;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_gaugecmp, m) {
  m.doc() = "Transition probabilities of hydrogen-like atoms under minimal and dipole coupling.";

  config_error_type = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError).ptr();
  // diagnostic() carries the line number
  py::register_local_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error_type, e.diagnostic().c_str());
    }
  });
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

  m.attr("alpha") = kAlpha;

  py::enum_<Coupling>(m, "Coupling").value("minimal", Coupling::Minimal).value("dipole", Coupling::Dipole);

  py::class_<AtomicState>(m, "AtomicState")
      .def(py::init<int, int, int, double, double>(), py::arg("n"), py::arg("l"), py::arg("m"), py::arg("Z") = 1.0,
           py::arg("mu_e") = 1.0)
      .def_readonly("n", &AtomicState::n)
      .def_readonly("l", &AtomicState::l)
      .def_readonly("m", &AtomicState::m)
      .def_readonly("Z", &AtomicState::Z)
      .def_property_readonly("energy", &AtomicState::energy)
      .def_property_readonly("length_scale", &AtomicState::length_scale)
      .def("__repr__", [](const AtomicState& s) {
        return "AtomicState(" + std::to_string(s.n) + ", " + std::to_string(s.l) + ", " + std::to_string(s.m) +
               ", Z=" + format_double(s.Z) + ")";
      });

  py::class_<TransitionSpec>(m, "TransitionSpec")
      .def(py::init([](const AtomicState& i, const AtomicState& f, Coupling c, std::optional<double> Lambda) {
             return make_transition(i, f, c, 0.0, Lambda);
           }),
           py::arg("initial"), py::arg("final"), py::arg("coupling"), py::arg("Lambda") = py::none())
      .def_readonly("initial", &TransitionSpec::initial)
      .def_readonly("final", &TransitionSpec::final_state)
      .def_readonly("coupling", &TransitionSpec::coupling)
      .def_property_readonly("gap", &TransitionSpec::gap);

  py::class_<ProbabilityResult>(m, "ProbabilityResult")
      .def_readonly("P0", &ProbabilityResult::P0)
      .def_readonly("Pphi", &ProbabilityResult::Pphi)
      .def_readonly("total", &ProbabilityResult::total)
      .def_readonly("quad_error", &ProbabilityResult::quad_error)
      .def_readonly("warnings", &ProbabilityResult::warnings);

  m.def("clebsch_gordan", &clebsch_gordan, py::arg("l1"), py::arg("m1"), py::arg("l2"), py::arg("m2"),
        py::arg("L"), py::arg("M"));
  m.def("form_factor_1s2p", &form_factor_1s2p, py::arg("omega"), py::arg("Z"), py::arg("coupling"),
        py::arg("mu_e") = 1.0);
  m.def("envelope_1s2p", &envelope_1s2p, py::arg("omega"), py::arg("Z"), py::arg("mu_e") = 1.0);

  m.def(
      "vacuum_probability",
      [](const TransitionSpec& s, double T) {
        return std::isinf(T) ? asymptotic_vacuum_probability(s) : vacuum_probability(s, T);
      },
      py::arg("spec"), py::arg("T"), "P0 after switching time T (natural units); T = inf gives the long-time limit");
  m.def(
      "emission_probability", [](const TransitionSpec& s, double T) { return emission_probability(s, T); },
      py::arg("spec"), py::arg("T"));
  m.def(
      "emission_rate", [](const TransitionSpec& s) { return emission_rate_si(s); }, py::arg("spec"),
      "golden-rule rate in 1/s");
  m.def("envelope_constant", &envelope_constant, py::arg("spec"));

  m.def(
      "coherent_probability",
      [](const TransitionSpec& s, double T, std::array<double, 3> k0, std::array<double, 3> sigma, int polarization,
         double Tstar, double amplitude_scale, bool include_vacuum, unsigned workers) {
        CoherentGaussianPulse p;
        p.k0 = to_vec(k0);
        p.sigma = to_vec(sigma);
        p.lambda0 = polarization;
        p.Tstar = Tstar;
        p.amplitude_scale = amplitude_scale;
        CoherentOptions o;
        o.include_vacuum = include_vacuum;
        o.workers = workers;
        py::gil_scoped_release release;
        return coherent_Pphi(s, p, T, o);
      },
      py::arg("spec"), py::arg("T"), py::arg("k0"), py::arg("sigma"), py::arg("polarization") = 1,
      py::arg("Tstar") = 0.0, py::arg("amplitude_scale") = 1.0, py::arg("include_vacuum") = false,
      py::arg("workers") = 1);

  m.def(
      "cutoff_sweep",
      [](const TransitionSpec& s, double T, const std::vector<double>& lambdas, unsigned workers) {
        ProbabilityOptions o;
        o.workers = workers;
        std::vector<CutoffPoint> pts;
        {
          py::gil_scoped_release release;
          pts = cutoff_sweep(s, T, lambdas, o);
        }
        py::list out;
        for (const auto& p : pts) {
          py::dict d;
          d["Lambda"] = p.Lambda;
          d["P_dip"] = p.P_dip;
          d["P_min"] = p.P_min;
          d["difference"] = p.difference;
          d["quad_error"] = p.quad_error;
          out.append(d);
        }
        return out;
      },
      py::arg("spec"), py::arg("T"), py::arg("lambdas"), py::arg("workers") = 1,
      "Lambda in units of Z/a0; T <= 0 or inf selects the long-time limit");

  m.def(
      "run_scenario",
      [](const std::string& scenario, const std::string& config, const std::string& preset, unsigned workers) {
        const RunConfig cfg = build_config(scenario, config, preset, workers);
        ScenarioOutput out;
        {
          py::gil_scoped_release release;
          out = run_scenario(cfg);
        }
        return py::make_tuple(out.text, out.numerical_failure());
      },
      py::arg("scenario"), py::arg("config") = "", py::arg("preset") = "", py::arg("workers") = 0,
      "Run a scenario from config text and/or a preset; returns (text, failed)");
  m.def("presets", &preset_names);

  m.def(
      "gauge_audit",
      [](double Z, int random_chi, std::uint64_t seed) {
        audit::AuditConfig cfg;
        cfg.Z = Z;
        cfg.random_chi = random_chi;
        cfg.seed = seed;
        audit::AuditReport rep;
        {
          py::gil_scoped_release release;
          rep = audit::run_gauge_audit(cfg);
        }
        py::list cases;
        for (const auto& c : rep.cases)
          cases.append(py::make_tuple(c.name, c.deviation, c.threshold, c.pass()));
        return cases;
      },
      py::arg("Z") = 1.0, py::arg("random_chi") = 20, py::arg("seed") = 12345,
      "List of (name, deviation, threshold, passed)");
}
