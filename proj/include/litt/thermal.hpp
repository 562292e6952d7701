#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "litt/config.hpp"
#include "litt/fem.hpp"
#include "litt/sparse.hpp"

namespace litt {

struct RobinCondition {
  double alpha = 0.0;  // W/(m^2 K)
  double T_ext = 0.0;  // K
};

/// Heat transfer data per boundary tag; untagged surfaces are insulated.
struct HeatBoundary {
  std::map<BoundaryTag, RobinCondition> robin;
  std::map<BoundaryTag, double> fixed;  // K, imposed by elimination

  /// alpha_cool / T_cool on the radiating and cooled applicator surface,
  /// alpha_amb / T_amb on the ambient surface.
  static HeatBoundary standard(const MaterialParams& params, const RunSettings& settings);
};

struct HeatStepResult {
  std::vector<double> T;
  SolveReport report;
};

struct EshOptions {
  double tol = 0.01;  // K, max nodal change between sweeps
  int max_sweeps = 5;
  bool single_sweep = false;
};

struct EshStepResult {
  std::vector<double> T;
  int sweeps = 0;
  bool converged = false;
  double last_change = 0.0;  // K
  int cg_iterations = 0;     // summed over sweeps
};

class ThermalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Implicit Euler for the bio-heat equation with lumped mass:
///   (M(c)/dt + K + R + P) T_new = M(c)/dt T_old + V q + P T_b + R T_ext
class HeatSolver {
 public:
  HeatSolver(const AxiMesh& mesh, const MaterialParams& params, HeatBoundary boundary);

  const std::vector<double>& volumes() const { return volumes_; }

  /// `c_eff` is the specific heat per node (J/(kg K)); `q_src` the volumetric
  /// source (W/m^3). Throws ThermalError when CG does not converge.
  HeatStepResult step(std::span<const double> T_old, std::span<const double> c_eff, std::span<const double> q_src,
                      double dt, double rtol, int max_iter = 0) const;

  /// Lagged-coefficient fixed point on the effective heat capacity.
  EshStepResult esh_step(std::span<const double> T_old, std::span<const double> q_src, double dt,
                         const EshOptions& opts, double rtol, int max_iter = 0) const;

  CsrMatrix system_matrix(std::span<const double> c_eff, double dt) const;
  const CsrMatrix& stiffness() const { return stiffness_; }
  const std::vector<double>& perfusion_diagonal() const { return perfusion_; }

 private:
  HeatStepResult solve(const CsrMatrix& A, std::span<const double> b, std::span<const double> x0, double rtol,
                       int max_iter) const;

  const AxiMesh* mesh_;
  MaterialParams params_;
  std::vector<double> volumes_;
  CsrMatrix stiffness_;
  std::vector<double> robin_diag_;
  std::vector<double> robin_load_;
  std::vector<double> perfusion_;
  std::vector<char> is_fixed_;
  std::vector<double> fixed_value_;
  bool any_fixed_ = false;
};

/// One-shot convenience over HeatSolver with the standard boundary.
std::vector<double> heat_step(const AxiMesh& mesh, std::span<const double> T_old, std::span<const double> c_eff,
                              std::span<const double> q_rad, std::span<const double> q_cond,
                              const MaterialParams& params, const RunSettings& settings);

}  // namespace litt
