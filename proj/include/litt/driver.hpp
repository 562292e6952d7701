#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "litt/config.hpp"
#include "litt/damage.hpp"
#include "litt/fem.hpp"
#include "litt/mesh.hpp"
#include "litt/radiative.hpp"
#include "litt/thermal.hpp"
#include "litt/vaporization.hpp"

namespace litt {

/// Scalars recorded after every step. Temperatures in kelvin.
struct StepRecord {
  double t = 0.0;
  double T_probe = 0.0;
  double T_max = 0.0;
  double q_vap = 0.0;             // W handed to condensation for the next step
  double q_cond_discarded = 0.0;  // W dropped because the window region was empty
  double H_total = 0.0;           // J
  double omega_probe = 0.0;
  int cg_iters_heat = 0;
  int cg_iters_rad = 0;

  double q_app = 0.0;             // W
  double absorbed = 0.0;          // W
  double marshak_outflow = 0.0;   // W
  double latent_energy = 0.0;     // J moved into vapour this step
  double cond_injected = 0.0;     // J deposited by condensation this step
  double cond_region_volume = 0.0;
  double latent_clipped = 0.0;    // W of ESH re-condensation dropped
  int esh_sweeps = 0;
  bool esh_converged = true;
};

struct SimState {
  double t = 0.0;
  std::vector<double> T;      // K
  EnthalpyState H;
  DamageState omega;
  std::vector<double> phi;    // W/m^2
  std::vector<double> q_rad;  // W/m^3
  CondensationSource pending_cond;  // applied during the next step
  double pending_dt = 0.0;          // step length the pending source was computed for
};

class SimulationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time stepper for one case. Per step: optics from damage, P1 solve at the
/// new time, heat step with the lagged condensation source, phase handling,
/// condensation source for the next step, damage update.
class Simulation {
 public:
  Simulation(std::shared_ptr<const AxiMesh> mesh, CaseSpec c, MaterialParams params, RunSettings settings);

  bool done() const;
  const StepRecord& step();
  void run();

  const AxiMesh& mesh() const { return *mesh_; }
  const CaseSpec& case_spec() const { return case_; }
  const MaterialParams& params() const { return params_; }
  const RunSettings& settings() const { return settings_; }
  const SimState& state() const { return state_; }
  const std::vector<StepRecord>& log() const { return log_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<double>& volumes() const { return heat_.volumes(); }
  Point probe_point() const { return probe_.point(); }
  double probe_temperature() const { return probe_(state_.T); }

  double total_discarded_energy() const { return discarded_energy_; }
  double total_clipped_energy() const { return clipped_energy_; }
  int esh_unconverged_steps() const { return esh_unconverged_; }

 private:
  std::shared_ptr<const AxiMesh> mesh_;
  CaseSpec case_;
  MaterialParams params_;
  RunSettings settings_;
  HeatSolver heat_;
  RadiativeSolver radiation_;
  PointProbe probe_;
  SimState state_;
  std::vector<StepRecord> log_;
  std::vector<std::string> warnings_;
  long step_index_ = 0;
  double last_q_app_ = -1.0;
  double discarded_energy_ = 0.0;
  double clipped_energy_ = 0.0;
  int esh_unconverged_ = 0;
};

struct RunOptions {
  /// Write the time series, snapshots and metadata below this directory.
  /// Empty disables file output.
  std::filesystem::path output_dir;
  bool write_snapshots = true;
  bool write_mesh = false;
  /// Shared mesh; built from the settings when absent.
  std::shared_ptr<const AxiMesh> mesh;
};

struct RunResult {
  CaseSpec case_spec;
  RunSettings settings;
  std::vector<StepRecord> log;
  SimState final_state;
  std::vector<std::string> warnings;
  std::filesystem::path output_dir;  // empty when nothing was written
  double discarded_energy = 0.0;     // J
  double clipped_energy = 0.0;       // J
  int esh_unconverged_steps = 0;
  std::size_t mesh_nodes = 0;

  double max_probe_temperature() const;
};

/// Raised by run_case after partial outputs have been flushed.
class RunFailed : public std::runtime_error {
 public:
  RunFailed(const std::string& what, RunResult partial);
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

std::shared_ptr<const AxiMesh> make_mesh(const RunSettings& settings);

RunResult run_case(const CaseSpec& c, const MaterialParams& params, const RunSettings& settings,
                   const RunOptions& options = {});

/// One run per condensation window on a shared mesh, plus a comparison CSV
/// (`comparison.csv`) when output is enabled.
std::vector<RunResult> run_sensitivity(const CaseSpec& c, const MaterialParams& params, const RunSettings& settings,
                                       const std::vector<CondensationWindow>& windows,
                                       const RunOptions& options = {}, bool parallel = true);

/// Directory name used for a run: `<label>_<model>`.
std::string run_name(const CaseSpec& c, const RunSettings& settings);

}  // namespace litt
