#include "litt/output.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include <json.hpp>

namespace litt {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_time_series_header(std::ostream& out) { out << kTimeSeriesHeader << '\n'; }

void write_time_series_row(std::ostream& out, const StepRecord& r) {
  out << format_number(r.t) << ',' << format_number(to_celsius(r.T_probe)) << ','
      << format_number(to_celsius(r.T_max)) << ',' << format_number(r.q_vap) << ','
      << format_number(r.q_cond_discarded) << ',' << format_number(r.H_total) << ',' << format_number(r.omega_probe)
      << ',' << r.cg_iters_heat << ',' << r.cg_iters_rad << '\n';
}

void write_time_series(std::ostream& out, const std::vector<StepRecord>& log) {
  write_time_series_header(out);
  for (const auto& r : log) write_time_series_row(out, r);
}

void write_snapshot(std::ostream& out, const AxiMesh& mesh, const SimState& s) {
  out << kSnapshotHeader << '\n';
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    const auto& p = mesh.nodes()[i];
    out << i << ',' << format_number(p.r) << ',' << format_number(p.z) << ',' << format_number(to_celsius(s.T[i]))
        << ',' << format_number(s.phi.empty() ? 0.0 : s.phi[i]) << ',' << format_number(s.omega.omega[i]) << ','
        << format_number(s.H.H[i]) << '\n';
  }
}

std::string metadata_json(const Simulation& sim, const std::string& status) {
  using nlohmann::ordered_json;
  const auto& c = sim.case_spec();
  const auto& s = sim.settings();
  ordered_json j;
  j["code"] = {{"name", "litt"}, {"version", LITT_VERSION}};
  j["status"] = status;
  j["case"] = {{"label", c.label},     {"q_hat_W", c.q_hat}, {"flow_rate_ml_min", c.flow_rate},
               {"t_on_s", c.t_on},     {"t_off_s", c.t_off}, {"t_end_s", c.t_end},
               {"d_r_m", c.d_r},       {"d_z_m", c.d_z}};
  j["model"] = std::string(to_string(s.model));
  j["beta_q"] = s.beta_q;
  j["condensation_window_C"] = {to_celsius(s.T_cond_low), to_celsius(s.T_cond_high)};
  j["solver"] = {{"linear", "conjugate gradients"},
                 {"preconditioner", "jacobi"},
                 {"cg_rtol", s.cg_rtol},
                 {"cg_max_iter", s.cg_max_iter},
                 {"time_stepping", "implicit euler"},
                 {"dt_s", s.dt},
                 {"radiation_every", s.radiation_every},
                 {"esh_tol_K", s.esh_tol},
                 {"esh_max_sweeps", s.esh_max_sweeps},
                 {"esh_single_sweep", s.esh_single_sweep}};
  const auto& mesh = sim.mesh();
  j["mesh"] = {{"nodes", mesh.num_nodes()},
               {"triangles", mesh.num_triangles()},
               {"mesh_h_m", s.mesh_h},
               {"max_edge_m", mesh.max_edge_length()},
               {"volume_m3", mesh.volume()},
               {"area_rad_m2", mesh.boundary_measure(BoundaryTag::rad)}};
  j["probe"] = {{"r_m", sim.probe_point().r}, {"z_m", sim.probe_point().z}};
  j["diagnostics"] = {{"steps", sim.log().size()},
                      {"t_final_s", sim.state().t},
                      {"discarded_condensation_J", sim.total_discarded_energy()},
                      {"clipped_esh_recondensation_J", sim.total_clipped_energy()},
                      {"esh_unconverged_steps", sim.esh_unconverged_steps()}};
  j["warnings"] = sim.warnings();
  Config cfg;
  cfg.material = sim.params();
  cfg.run = s;
  j["config"] = write_config(cfg);
  return j.dump(2) + "\n";
}

void write_comparison(std::ostream& out, const std::vector<RunResult>& runs) {
  out << "t_s";
  for (const auto& r : runs)
    out << ",T_probe_C[" << format_number(to_celsius(r.settings.T_cond_low)) << ':'
        << format_number(to_celsius(r.settings.T_cond_high)) << ']';
  out << '\n';
  std::size_t rows = runs.empty() ? 0 : runs.front().log.size();
  for (const auto& r : runs) rows = std::min(rows, r.log.size());
  for (std::size_t k = 0; k < rows; ++k) {
    out << format_number(runs.front().log[k].t);
    for (const auto& r : runs) out << ',' << format_number(to_celsius(r.log[k].T_probe));
    out << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace litt
