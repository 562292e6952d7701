#pragma once

#include <array>
#include <span>
#include <vector>

#include "litt/config.hpp"

namespace litt {

/// Tissue water density W(T) in kg/m^3. Below 103 C and above 104 C it
/// follows two exponential fits; in between a cubic Hermite segment matches
/// value and slope of both fits at the knots. Arguments are in kelvin.
class WaterModel {
 public:
  static constexpr double kAmplitude = 800.0;  // kg/m^3
  static constexpr double kKnotLowC = 103.0;
  static constexpr double kKnotHighC = 104.0;

  WaterModel();

  double density(double T) const;
  /// dW/dT in kg/(m^3 K), exact derivative of the active branch.
  double slope(double T) const;

  /// Dimensionless bracket (W / 800) of each branch, Celsius argument.
  static double low_branch(double T_c);
  static double low_branch_slope(double T_c);
  static double high_branch(double T_c);
  static double high_branch_slope(double T_c);
  double spline(double T_c) const;
  double spline_slope(double T_c) const;
  /// Cubic with the rounded coefficients commonly quoted for this fit.
  static double tabulated_spline(double T_c);

  /// Power-basis coefficients of the Hermite segment in s = T_c - 103.
  const std::array<double, 4>& coefficients() const { return c_; }

 private:
  std::array<double, 4> c_{};
};

const WaterModel& water_model();

double water_density(double T);
double water_density_slope(double T);

/// C_p' = C_p - (lambda / rho) dW/dT, nodewise. Never below C_p.
std::vector<double> effective_capacity(std::span<const double> T, const MaterialParams& params);
double effective_capacity(double T, const MaterialParams& params);

struct EnthalpyState {
  std::vector<double> H;  // J/m^3
  double H_cap = 0.0;     // rho * 0.8 * lambda

  static EnthalpyState initial(std::size_t n, const MaterialParams& params);
};

/// Latent capacity per volume when 80 % of the tissue mass is water.
double enthalpy_capacity(const MaterialParams& params);

struct ClampResult {
  double delta_H_total = 0.0;  // J, lumped integral of H' - H
  std::size_t clamped_nodes = 0;
};

/// Moves heat above 100 C into the enthalpy until H reaches H_cap; the
/// surplus past the cap stays as temperature. Updates T and state in place.
ClampResult enthalpy_clamp(std::span<double> T, EnthalpyState& state, const MaterialParams& params,
                           std::span<const double> volumes);

struct LatentPower {
  double power = 0.0;    // W released into vapour this step
  double clipped = 0.0;  // W of re-condensation dropped (cooling through the band)
};

/// lambda * integral of max(0, W(T_old) - W(T_new)) / dt.
LatentPower esh_latent_power(std::span<const double> T_old, std::span<const double> T_new, double dt,
                             const MaterialParams& params, std::span<const double> volumes);

struct CondensationWindow {
  double low = 0.0;   // K
  double high = 0.0;  // K
};

struct CondensationSource {
  double q_bar_vap = 0.0;            // W
  std::vector<double> q_cond;        // W/m^3
  CondensationWindow window;
  double region_volume = 0.0;        // m^3
  double discarded = 0.0;            // W lost when the region is empty

  static CondensationSource zero(std::size_t n, CondensationWindow w);
};

/// Spreads q_bar_vap uniformly over nodes with low <= T <= high.
CondensationSource condensation_source(std::span<const double> volumes, std::span<const double> T, double q_bar_vap,
                                       CondensationWindow window);

}  // namespace litt
