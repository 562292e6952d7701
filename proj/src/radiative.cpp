#include "litt/radiative.hpp"

#include <stdexcept>

#include "litt/damage.hpp"

namespace litt {

double laser_power(double t, const CaseSpec& c, double beta_q) {
  if (t >= c.t_on && t <= c.t_off) return (1.0 - beta_q) * c.q_hat;
  return 0.0;
}

double diffusion_coefficient(double mu_a, double mu_s, double g) { return 1.0 / (3.0 * (mu_a + (1.0 - g) * mu_s)); }

OpticalFields optical_update(const MaterialParams& p, std::span<const double> omega) {
  const std::size_t n = omega.size();
  OpticalFields f{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(omega[i] >= 0.0)) throw std::invalid_argument("optical_update: damage must be >= 0");
    const double w = coagulation_fraction(omega[i]);
    f.mu_a[i] = p.mu_a_native + w * (p.mu_a_coag - p.mu_a_native);
    f.mu_s[i] = p.mu_s_native + w * (p.mu_s_coag - p.mu_s_native);
    f.g[i] = p.g_native + w * (p.g_coag - p.g_native);
    f.D[i] = diffusion_coefficient(f.mu_a[i], f.mu_s[i], f.g[i]);
  }
  return f;
}

RadiativeSolver::RadiativeSolver(const AxiMesh& mesh)
    : mesh_(&mesh),
      volumes_(lumped_volumes(mesh)),
      marshak_(mesh, {{BoundaryTag::amb, kMarshakAmbient}, {BoundaryTag::cool, 0.0}}),
      rad_measure_(lumped_boundary_measure(mesh, BoundaryTag::rad)),
      area_rad_(mesh.boundary_measure(BoundaryTag::rad)) {
  if (!(area_rad_ > 0.0)) throw std::invalid_argument("mesh has no radiating surface");
}

P1Solution RadiativeSolver::solve(const OpticalFields& optics, const LaserDrive& drive, double rtol, int max_iter,
                                  std::span<const double> x0) const {
  const std::size_t n = mesh_->num_nodes();
  if (optics.mu_a.size() != n || optics.D.size() != n)
    throw std::invalid_argument("RadiativeSolver: optics size does not match mesh");
  if (!(drive.q_app >= 0.0)) throw std::invalid_argument("RadiativeSolver: q_app must be >= 0");

  P1Solution out;
  if (drive.q_app == 0.0) {
    out.phi.assign(n, 0.0);
    out.q_rad.assign(n, 0.0);
    out.report.converged = true;
    out.report.residual_history = {0.0};
    return out;
  }

  std::vector<double> react(n);
  for (std::size_t i = 0; i < n; ++i) react[i] = optics.mu_a[i] * volumes_[i] + marshak_.diagonal()[i];
  const CsrMatrix A = assemble_stiffness(*mesh_, optics.D).plus_diagonal(react);

  const double flux = drive.q_app / (drive.area_rad > 0.0 ? drive.area_rad : area_rad_);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = flux * rad_measure_[i];

  std::vector<double> guess = x0.size() == n ? std::vector<double>(x0.begin(), x0.end()) : std::vector<double>(n, 0.0);
  auto solved = cg_solve(A, b, guess, rtol, max_iter);
  out.phi = std::move(solved.x);
  out.report = std::move(solved.report);

  out.q_rad.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.q_rad[i] = optics.mu_a[i] * out.phi[i];
    out.absorbed += out.q_rad[i] * volumes_[i];
    out.outflow += marshak_.diagonal()[i] * out.phi[i];
  }
  return out;
}

P1Solution solve_p1(const AxiMesh& mesh, const OpticalFields& optics, const LaserDrive& drive, double rtol) {
  return RadiativeSolver(mesh).solve(optics, drive, rtol);
}

}  // namespace litt
