#include "litt/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "litt/vaporization.hpp"

namespace litt {

HeatBoundary HeatBoundary::standard(const MaterialParams& p, const RunSettings& s) {
  HeatBoundary b;
  b.robin[BoundaryTag::rad] = {p.alpha_cool, s.T_cool};
  b.robin[BoundaryTag::cool] = {p.alpha_cool, s.T_cool};
  b.robin[BoundaryTag::amb] = {p.alpha_amb, s.T_amb};
  return b;
}

HeatSolver::HeatSolver(const AxiMesh& mesh, const MaterialParams& params, HeatBoundary boundary)
    : mesh_(&mesh),
      params_(params),
      volumes_(lumped_volumes(mesh)),
      stiffness_(assemble_stiffness(mesh, std::vector<double>(mesh.num_nodes(), params.kappa))),
      robin_diag_(mesh.num_nodes(), 0.0),
      robin_load_(mesh.num_nodes(), 0.0),
      perfusion_(mesh.num_nodes(), 0.0) {
  for (const auto& [tag, bc] : boundary.robin) {
    if (!(bc.alpha >= 0.0)) throw std::invalid_argument("heat transfer coefficient must be >= 0");
    const auto m = lumped_boundary_measure(mesh, tag);
    for (std::size_t i = 0; i < m.size(); ++i) {
      robin_diag_[i] += bc.alpha * m[i];
      robin_load_[i] += bc.alpha * bc.T_ext * m[i];
    }
  }
  is_fixed_.assign(mesh.num_nodes(), 0);
  fixed_value_.assign(mesh.num_nodes(), 0.0);
  for (const auto& e : mesh.boundary_edges()) {
    const auto it = boundary.fixed.find(e.tag);
    if (it == boundary.fixed.end()) continue;
    if (!(it->second > 0.0)) throw std::invalid_argument("fixed boundary temperature must be > 0 K");
    for (int v : e.nodes) {
      is_fixed_[v] = 1;
      fixed_value_[v] = it->second;
      any_fixed_ = true;
    }
  }
  if (params.xi_b > 0.0)
    for (std::size_t i = 0; i < volumes_.size(); ++i) perfusion_[i] = params.xi_b * volumes_[i];
}

CsrMatrix HeatSolver::system_matrix(std::span<const double> c_eff, double dt) const {
  const std::size_t n = volumes_.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = params_.rho * c_eff[i] * volumes_[i] / dt + robin_diag_[i] + perfusion_[i];
  return stiffness_.plus_diagonal(d);
}

HeatStepResult HeatSolver::step(std::span<const double> T_old, std::span<const double> c_eff,
                                std::span<const double> q_src, double dt, double rtol, int max_iter) const {
  const std::size_t n = volumes_.size();
  if (T_old.size() != n || c_eff.size() != n || q_src.size() != n)
    throw std::invalid_argument("HeatSolver::step: field size does not match mesh");
  if (!(dt > 0.0)) throw std::invalid_argument("HeatSolver::step: dt must be > 0");

  const CsrMatrix A = system_matrix(c_eff, dt);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = params_.rho * c_eff[i] * volumes_[i] / dt * T_old[i] + volumes_[i] * q_src[i] + robin_load_[i] +
           perfusion_[i] * params_.T_b;
  }
  if (!any_fixed_) return solve(A, b, T_old, rtol, max_iter);

  // Symmetric elimination of fixed nodes: their columns move to the load
  // and their rows become identity.
  std::vector<Triplet> kept;
  kept.reserve(A.nnz());
  const auto& rp = A.row_ptr();
  for (int i = 0; i < A.size(); ++i) {
    if (is_fixed_[i]) {
      kept.push_back({i, i, 1.0});
      b[i] = fixed_value_[i];
      continue;
    }
    for (int k = rp[i]; k < rp[i + 1]; ++k) {
      const int j = A.cols()[k];
      if (is_fixed_[j]) b[i] -= A.values()[k] * fixed_value_[j];
      else kept.push_back({i, j, A.values()[k]});
    }
  }
  std::vector<double> x0(T_old.begin(), T_old.end());
  for (std::size_t i = 0; i < n; ++i)
    if (is_fixed_[i]) x0[i] = fixed_value_[i];
  return solve(CsrMatrix::from_triplets(A.size(), kept), b, x0, rtol, max_iter);
}

HeatStepResult HeatSolver::solve(const CsrMatrix& A, std::span<const double> b, std::span<const double> x0,
                                 double rtol, int max_iter) const {
  auto solved = cg_solve(A, b, x0, rtol, max_iter);
  if (!solved.report.converged)
    throw ThermalError("heat step: CG did not converge in " + std::to_string(solved.report.iterations) +
                       " iterations (relative residual " + std::to_string(solved.report.final_relative_residual) +
                       ")");
  return {std::move(solved.x), std::move(solved.report)};
}

EshStepResult HeatSolver::esh_step(std::span<const double> T_old, std::span<const double> q_src, double dt,
                                   const EshOptions& opts, double rtol, int max_iter) const {
  EshStepResult out;
  std::vector<double> iterate(T_old.begin(), T_old.end());
  const int sweeps = opts.single_sweep ? 1 : std::max(opts.max_sweeps, 1);
  for (int k = 0; k < sweeps; ++k) {
    const auto c_eff = effective_capacity(iterate, params_);
    auto res = step(T_old, c_eff, q_src, dt, rtol, max_iter);
    out.cg_iterations += res.report.iterations;
    double change = 0.0;
    for (std::size_t i = 0; i < iterate.size(); ++i) change = std::max(change, std::abs(res.T[i] - iterate[i]));
    iterate = std::move(res.T);
    out.sweeps = k + 1;
    out.last_change = change;
    if (change <= opts.tol) {
      out.converged = true;
      break;
    }
  }
  if (opts.single_sweep) out.converged = true;
  out.T = std::move(iterate);
  return out;
}

std::vector<double> heat_step(const AxiMesh& mesh, std::span<const double> T_old, std::span<const double> c_eff,
                              std::span<const double> q_rad, std::span<const double> q_cond,
                              const MaterialParams& params, const RunSettings& settings) {
  HeatSolver solver(mesh, params, HeatBoundary::standard(params, settings));
  std::vector<double> q(q_rad.begin(), q_rad.end());
  for (std::size_t i = 0; i < q.size() && i < q_cond.size(); ++i) q[i] += q_cond[i];
  return solver.step(T_old, c_eff, q, settings.dt, settings.cg_rtol, settings.cg_max_iter).T;
}

}  // namespace litt
