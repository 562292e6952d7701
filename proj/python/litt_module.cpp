#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "litt/config.hpp"
#include "litt/damage.hpp"
#include "litt/driver.hpp"
#include "litt/radiative.hpp"
#include "litt/vaporization.hpp"
#include "litt/verify.hpp"

namespace py = pybind11;
using namespace litt;

namespace {

py::dict case_dict(const CaseSpec& c) {
  py::dict d;
  d["label"] = c.label;
  d["q_hat"] = c.q_hat;
  d["flow_rate"] = c.flow_rate;
  d["t_on"] = c.t_on;
  d["t_off"] = c.t_off;
  d["t_end"] = c.t_end;
  d["d_r"] = c.d_r;
  d["d_z"] = c.d_z;
  return d;
}

// Columns of the time series in SI units except temperatures in Celsius.
py::dict series_dict(const std::vector<StepRecord>& log) {
  std::vector<double> t, T_probe, T_max, q_vap, discarded, H, omega;
  std::vector<int> it_heat, it_rad;
  for (const auto& r : log) {
    t.push_back(r.t);
    T_probe.push_back(to_celsius(r.T_probe));
    T_max.push_back(to_celsius(r.T_max));
    q_vap.push_back(r.q_vap);
    discarded.push_back(r.q_cond_discarded);
    H.push_back(r.H_total);
    omega.push_back(r.omega_probe);
    it_heat.push_back(r.cg_iters_heat);
    it_rad.push_back(r.cg_iters_rad);
  }
  py::dict d;
  d["t_s"] = t;
  d["T_probe_C"] = T_probe;
  d["T_max_C"] = T_max;
  d["Qvap_W"] = q_vap;
  d["Qcond_discarded_W"] = discarded;
  d["H_total_J"] = H;
  d["omega_probe"] = omega;
  d["cg_iters_heat"] = it_heat;
  d["cg_iters_rad"] = it_rad;
  return d;
}

}  // namespace

PYBIND11_MODULE(_litt, m) {
  m.doc() = "Laser-induced thermotherapy simulator core";
  m.attr("__version__") = LITT_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<CaseNotFound>(m, "CaseNotFound", PyExc_KeyError);
  py::register_exception<RunFailed>(m, "RunFailed", PyExc_RuntimeError);

  m.def("to_kelvin", &to_kelvin, py::arg("celsius"));
  m.def("to_celsius", &to_celsius, py::arg("kelvin"));

  m.def("cases", [] {
    py::list out;
    for (const auto& c : builtin_cases()) out.append(case_dict(c));
    return out;
  });
  m.def("find_case", [](const std::string& label) { return case_dict(find_case(label)); }, py::arg("label"));

  m.def("check_config", [](const std::string& text) { return write_config(parse_config(text)); }, py::arg("text"),
        "Parse and validate configuration text; returns it in canonical form.");
  m.def("default_config", [] { return write_config(Config{}); });

  m.def("laser_power", [](double t, const std::string& label, double beta_q) {
    return laser_power(t, find_case(label), beta_q);
  }, py::arg("t"), py::arg("case"), py::arg("beta_q") = 0.1);
  m.def("arrhenius_rate", [](double T) { return arrhenius_rate(T, MaterialParams{}); }, py::arg("T_kelvin"));
  m.def("water_density", &water_density, py::arg("T_kelvin"));
  m.def("water_density_slope", &water_density_slope, py::arg("T_kelvin"));
  m.def("effective_capacity", [](double T) { return effective_capacity(T, MaterialParams{}); }, py::arg("T_kelvin"));
  m.def("enthalpy_capacity", [] { return enthalpy_capacity(MaterialParams{}); });
  m.def("enthalpy_clamp", [](std::vector<double> T, std::vector<double> H, std::vector<double> volumes) {
    const MaterialParams p;
    auto state = EnthalpyState::initial(0, p);
    state.H = std::move(H);
    if (state.H.size() != T.size()) throw std::invalid_argument("T and H must have the same length");
    const auto r = enthalpy_clamp(T, state, p, volumes);
    return py::make_tuple(T, state.H, r.delta_H_total);
  }, py::arg("T_kelvin"), py::arg("H"), py::arg("volumes"));
  m.def("stefan_zeta", &stefan_zeta, py::arg("stefan_number"));

  m.def("verify", [] {
    py::list out;
    for (const auto& c : run_builtin_checks(MaterialParams{}, RunSettings{}))
      out.append(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  });

  m.def("run_case", [](const std::string& label, const std::string& model, const std::string& config,
                       std::optional<double> dt, std::optional<double> mesh_h, std::optional<double> t_end,
                       const std::string& output_dir) {
    const Config cfg = parse_config(config);
    CaseSpec c = cfg.case_override.apply(find_case(label));
    if (t_end) {
      c.t_end = *t_end;
      c.t_off = std::min(c.t_off, c.t_end);
      c.t_on = std::min(c.t_on, c.t_off);
    }
    RunSettings s = cfg.run;
    s.model = parse_vapor_model(model);
    if (dt) s.dt = *dt;
    if (mesh_h) s.mesh_h = *mesh_h;
    RunOptions o;
    o.output_dir = output_dir;
    RunResult res;
    {
      py::gil_scoped_release release;
      res = run_case(c, cfg.material, s, o);
    }
    py::dict d = series_dict(res.log);
    d["warnings"] = res.warnings;
    d["discarded_energy_J"] = res.discarded_energy;
    d["mesh_nodes"] = res.mesh_nodes;
    return d;
  }, py::arg("case"), py::arg("model") = "enthalpy", py::arg("config") = "", py::arg("dt") = py::none(),
     py::arg("mesh_h") = py::none(), py::arg("t_end") = py::none(), py::arg("output_dir") = "",
     "Run one experiment; returns the time series as a dict of columns.");
}
