#pragma once

#include <span>
#include <vector>

#include "litt/config.hpp"
#include "litt/fem.hpp"

namespace litt {

struct OpticalFields {
  std::vector<double> mu_a;  // 1/m
  std::vector<double> mu_s;  // 1/m
  std::vector<double> g;
  std::vector<double> D;     // m, 1 / (3 (mu_a + (1 - g) mu_s))
};

struct LaserDrive {
  double q_app = 0.0;     // W entering the tissue
  double area_rad = 0.0;  // m^2 of the radiating surface
};

/// Marshak coefficient on the ambient surface. The cooled surface reflects.
inline constexpr double kMarshakAmbient = 0.5;

/// (1 - beta_q) q_hat while t_on <= t <= t_off, else 0.
double laser_power(double t, const CaseSpec& c, double beta_q);

double diffusion_coefficient(double mu_a, double mu_s, double g);

/// Blends native and coagulated optics with weight 1 - exp(-omega).
OpticalFields optical_update(const MaterialParams& params, std::span<const double> omega);

struct P1Solution {
  ScalarField phi;    // W/m^2
  ScalarField q_rad;  // W/m^3, mu_a * phi
  SolveReport report;
  double absorbed = 0.0;  // W, lumped integral of q_rad
  double outflow = 0.0;   // W, Marshak loss through the ambient surface
};

/// Steady P1 diffusion solver for the radiative energy. Holds the parts of
/// the system that do not depend on the optics.
class RadiativeSolver {
 public:
  explicit RadiativeSolver(const AxiMesh& mesh);

  double area_rad() const { return area_rad_; }

  /// -div(D grad phi) + mu_a phi = 0 with inflow q_app / area_rad on the
  /// radiating surface and D d_n phi + b phi = 0 elsewhere. `x0`, if given,
  /// seeds CG. Throws NumericalBreakdown; a non-converged report is returned.
  P1Solution solve(const OpticalFields& optics, const LaserDrive& drive, double rtol, int max_iter = 0,
                   std::span<const double> x0 = {}) const;

 private:
  const AxiMesh* mesh_;
  std::vector<double> volumes_;
  BoundaryOperator marshak_;
  std::vector<double> rad_measure_;
  double area_rad_;
};

P1Solution solve_p1(const AxiMesh& mesh, const OpticalFields& optics, const LaserDrive& drive, double rtol);

}  // namespace litt
