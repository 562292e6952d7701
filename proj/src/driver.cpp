#include "litt/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "litt/output.hpp"

namespace litt {

namespace {

// Remaining time below this is treated as reaching t_end.
constexpr double kTimeEps = 1e-9;

std::string snapshot_name(double t) {
  std::ostringstream s;
  s << "field_t" << static_cast<long long>(std::llround(t * 1000.0)) << "ms.csv";
  return s.str();
}

template <class T>
T validated(T v) {
  v.validate();
  return v;
}

}  // namespace

Simulation::Simulation(std::shared_ptr<const AxiMesh> mesh, CaseSpec c, MaterialParams params, RunSettings settings)
    : mesh_(std::move(mesh)),
      case_(validated(std::move(c))),
      params_(validated(params)),
      settings_(validated(std::move(settings))),
      heat_(*mesh_, params_, HeatBoundary::standard(params_, settings_)),
      radiation_(*mesh_),
      probe_(*mesh_, Point{case_.d_r, case_.d_z}) {
  const std::size_t n = mesh_->num_nodes();
  state_.T.assign(n, settings_.T_init);
  state_.H = EnthalpyState::initial(n, params_);
  state_.omega.omega.assign(n, 0.0);
  state_.phi.assign(n, 0.0);
  state_.q_rad.assign(n, 0.0);
  state_.pending_cond = CondensationSource::zero(n, {settings_.T_cond_low, settings_.T_cond_high});
}

bool Simulation::done() const { return case_.t_end - state_.t <= kTimeEps; }

const StepRecord& Simulation::step() {
  if (done()) throw SimulationError("simulation already reached t_end");
  const std::size_t n = mesh_->num_nodes();
  const auto& V = heat_.volumes();
  const double dt = std::min(settings_.dt, case_.t_end - state_.t);
  const double t_new = (case_.t_end - (state_.t + dt) <= kTimeEps) ? case_.t_end : state_.t + dt;

  StepRecord rec;
  rec.t = t_new;

  // Radiation at the new time.
  rec.q_app = laser_power(t_new, case_, settings_.beta_q);
  const bool resolve = step_index_ % settings_.radiation_every == 0 || rec.q_app != last_q_app_;
  if (resolve) {
    const auto optics = optical_update(params_, state_.omega.omega);
    auto p1 = radiation_.solve(optics, {rec.q_app, radiation_.area_rad()}, settings_.cg_rtol, settings_.cg_max_iter,
                               state_.phi);
    if (!p1.report.converged)
      throw SimulationError("radiation solve did not converge at t = " + format_number(t_new) + " s after " +
                            std::to_string(p1.report.iterations) + " iterations (relative residual " +
                            format_number(p1.report.final_relative_residual) + ")");
    state_.phi = std::move(p1.phi);
    state_.q_rad = std::move(p1.q_rad);
    rec.cg_iters_rad = p1.report.iterations;
    rec.absorbed = p1.absorbed;
    rec.marshak_outflow = p1.outflow;
    last_q_app_ = rec.q_app;
  } else if (!log_.empty()) {
    rec.absorbed = log_.back().absorbed;
    rec.marshak_outflow = log_.back().marshak_outflow;
  }

  // Condensation computed last step; rescaled so the deposited energy is
  // unchanged if this step is shorter.
  std::vector<double> source = state_.q_rad;
  const double cond_scale = state_.pending_dt > 0.0 ? state_.pending_dt / dt : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = state_.pending_cond.q_cond[i] * cond_scale;
    source[i] += q;
    rec.cond_injected += q * V[i] * dt;
  }

  // Heat.
  std::vector<double> T_new;
  try {
    if (settings_.model == VaporModel::esh) {
      auto res = heat_.esh_step(state_.T, source, dt,
                                {settings_.esh_tol, settings_.esh_max_sweeps, settings_.esh_single_sweep},
                                settings_.cg_rtol, settings_.cg_max_iter);
      T_new = std::move(res.T);
      rec.cg_iters_heat = res.cg_iterations;
      rec.esh_sweeps = res.sweeps;
      rec.esh_converged = res.converged;
      if (!res.converged) {
        if (esh_unconverged_ == 0)
          warnings_.push_back("ESH fixed point not converged at t = " + format_number(t_new) + " s (change " +
                              format_number(res.last_change) + " K after " + std::to_string(res.sweeps) +
                              " sweeps); further occurrences are counted in diagnostics");
        ++esh_unconverged_;
      }
    } else {
      const std::vector<double> c(n, params_.c_p);
      auto res = heat_.step(state_.T, c, source, dt, settings_.cg_rtol, settings_.cg_max_iter);
      T_new = std::move(res.T);
      rec.cg_iters_heat = res.report.iterations;
    }
  } catch (const ThermalError& e) {
    throw SimulationError(std::string(e.what()) + " at t = " + format_number(t_new) + " s");
  }

  // Phase change.
  double q_vap = 0.0;
  if (settings_.model == VaporModel::enthalpy) {
    const auto clamp = enthalpy_clamp(T_new, state_.H, params_, V);
    rec.latent_energy = clamp.delta_H_total;
    q_vap = clamp.delta_H_total / dt;
  } else if (settings_.model == VaporModel::esh) {
    const auto latent = esh_latent_power(state_.T, T_new, dt, params_, V);
    q_vap = latent.power;
    rec.latent_energy = latent.power * dt;
    rec.latent_clipped = latent.clipped;
    clipped_energy_ += latent.clipped * dt;
  }

  if (settings_.model == VaporModel::none) {
    state_.pending_cond = CondensationSource::zero(n, {settings_.T_cond_low, settings_.T_cond_high});
  } else {
    state_.pending_cond = condensation_source(V, T_new, q_vap, {settings_.T_cond_low, settings_.T_cond_high});
  }
  state_.pending_dt = dt;
  discarded_energy_ += state_.pending_cond.discarded * dt;

  damage_step_inplace(state_.omega, T_new, dt, params_);
  state_.T = std::move(T_new);
  state_.t = t_new;
  ++step_index_;

  rec.T_probe = probe_(state_.T);
  rec.T_max = *std::max_element(state_.T.begin(), state_.T.end());
  rec.q_vap = q_vap;
  rec.q_cond_discarded = state_.pending_cond.discarded;
  rec.cond_region_volume = state_.pending_cond.region_volume;
  rec.H_total = integrate(V, state_.H.H);
  rec.omega_probe = probe_(state_.omega.omega);
  log_.push_back(rec);
  return log_.back();
}

void Simulation::run() {
  while (!done()) step();
}

double RunResult::max_probe_temperature() const {
  double m = -INFINITY;
  for (const auto& r : log) m = std::max(m, r.T_probe);
  return m;
}

RunFailed::RunFailed(const std::string& what, RunResult partial)
    : std::runtime_error(what), partial_(std::move(partial)) {}

std::shared_ptr<const AxiMesh> make_mesh(const RunSettings& settings) {
  return std::make_shared<const AxiMesh>(build_mesh(settings.geometry, settings.mesh_h));
}

std::string run_name(const CaseSpec& c, const RunSettings& settings) {
  return c.label + "_" + std::string(to_string(settings.model));
}

RunResult run_case(const CaseSpec& c, const MaterialParams& params, const RunSettings& settings,
                   const RunOptions& options) {
  auto mesh = options.mesh ? options.mesh : make_mesh(settings);
  Simulation sim(mesh, c, params, settings);

  const bool write = !options.output_dir.empty();
  const auto& dir = options.output_dir;
  std::ofstream series;
  if (write) {
    std::filesystem::create_directories(dir);
    if (options.write_snapshots && settings.snapshot_every > 0)
      std::filesystem::create_directories(dir / "snapshots");
    series.open(dir / "timeseries.csv", std::ios::binary);
    if (!series) throw std::runtime_error("cannot write '" + (dir / "timeseries.csv").string() + "'");
    write_time_series_header(series);
    if (options.write_mesh) {
      std::ofstream m(dir / "mesh.txt", std::ios::binary);
      write_mesh(m, *mesh);
    }
  }

  auto snapshot = [&](double t) {
    if (!write || !options.write_snapshots || settings.snapshot_every <= 0) return;
    std::ofstream s(dir / "snapshots" / snapshot_name(t), std::ios::binary);
    write_snapshot(s, *mesh, sim.state());
  };

  auto collect = [&] {
    RunResult r;
    r.case_spec = c;
    r.settings = settings;
    r.log = sim.log();
    r.final_state = sim.state();
    r.warnings = sim.warnings();
    r.output_dir = write ? dir : std::filesystem::path{};
    r.discarded_energy = sim.total_discarded_energy();
    r.clipped_energy = sim.total_clipped_energy();
    r.esh_unconverged_steps = sim.esh_unconverged_steps();
    r.mesh_nodes = mesh->num_nodes();
    return r;
  };

  snapshot(0.0);
  try {
    while (!sim.done()) {
      const auto& rec = sim.step();
      if (write) write_time_series_row(series, rec);
      const auto every = static_cast<std::size_t>(settings.snapshot_every);
      if (every > 0 && (sim.log().size() % every == 0 || sim.done())) snapshot(rec.t);
    }
  } catch (const std::exception& e) {
    if (write) {
      series.flush();
      snapshot(sim.state().t);
      write_text_file(dir / "metadata.json", metadata_json(sim, std::string("failed: ") + e.what()));
    }
    throw RunFailed(e.what(), collect());
  }
  if (write) write_text_file(dir / "metadata.json", metadata_json(sim, "completed"));
  return collect();
}

std::vector<RunResult> run_sensitivity(const CaseSpec& c, const MaterialParams& params, const RunSettings& settings,
                                       const std::vector<CondensationWindow>& windows, const RunOptions& options,
                                       bool parallel) {
  if (windows.size() < 2) throw std::invalid_argument("run_sensitivity: need at least two condensation windows");
  std::vector<RunSettings> per_window;
  for (const auto& w : windows) {
    RunSettings s = settings;
    s.T_cond_low = w.low;
    s.T_cond_high = w.high;
    s.validate();
    per_window.push_back(s);
  }

  RunOptions shared = options;
  if (!shared.mesh) shared.mesh = make_mesh(settings);

  auto launch = [&](std::size_t k) {
    RunOptions o = shared;
    if (!options.output_dir.empty()) {
      o.output_dir = options.output_dir / ("window" + std::to_string(k) + "_" + format_number(to_celsius(windows[k].low)) + "_" +
                                           format_number(to_celsius(windows[k].high)));
    }
    return run_case(c, params, per_window[k], o);
  };

  std::vector<RunResult> results;
  if (parallel) {
    std::vector<std::future<RunResult>> jobs;
    for (std::size_t k = 0; k < windows.size(); ++k) jobs.push_back(std::async(std::launch::async, launch, k));
    for (auto& j : jobs) results.push_back(j.get());
  } else {
    for (std::size_t k = 0; k < windows.size(); ++k) results.push_back(launch(k));
  }

  if (!options.output_dir.empty()) {
    std::ofstream out(options.output_dir / "comparison.csv", std::ios::binary);
    write_comparison(out, results);
  }
  return results;
}

}  // namespace litt
