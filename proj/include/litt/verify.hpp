#pragma once

#include <string>
#include <vector>

#include "litt/config.hpp"

namespace litt {

/// Similarity constant of the one-phase Stefan problem: the root of
/// zeta exp(zeta^2) erf(zeta) = St / sqrt(pi), found by bisection.
double stefan_zeta(double stefan_number);

/// Planar one-phase vaporization front driven by a hot wall. The column
/// starts at 100 C with no vapour and the wall at z = 0 is held at T_hot.
/// Runs the heat step and enthalpy clamp on a thin axisymmetric strip
/// (insulated side walls) so conduction is 1D in z.
struct StefanSetup {
  double length = 0.02;         // m
  double width = 0.5e-3;        // m, strip radius
  double T_hot = to_kelvin(200.0);
  double t_end = 600.0;         // s
  double dt = 0.125;            // s
  int cells = 200;              // along z
  double cg_rtol = 1e-10;
};

struct StefanResult {
  double front = 0.0;        // m, vapour volume / cross-section
  double front_exact = 0.0;  // m, 2 zeta sqrt(alpha t)
  double zeta = 0.0;
  double relative_error = 0.0;
};

StefanResult run_stefan(const MaterialParams& params, const StefanSetup& setup);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-checks of the model ingredients: spline knots, capacity bound,
/// enthalpy clamp arithmetic, radiative power balance, condensation
/// conservation and the Stefan front.
std::vector<CheckResult> run_builtin_checks(const MaterialParams& params, const RunSettings& settings);

}  // namespace litt
