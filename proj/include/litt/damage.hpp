#pragma once

#include <span>
#include <vector>

#include "litt/config.hpp"

namespace litt {

/// Arrhenius rate A exp(-E_a / (R T)) in 1/s for T in kelvin. The exponent
/// is formed in the log domain, so A = 3.1e98 never meets a large
/// exponential; returns 0 on underflow.
double arrhenius_rate(double T, const MaterialParams& params);

/// Weight of the coagulated optics, 1 - exp(-omega). omega is capped at 700.
double coagulation_fraction(double omega);

struct DamageState {
  std::vector<double> omega;
};

/// Right-hand Riemann step: omega += dt * rate(T_new), nodewise.
DamageState damage_step(const DamageState& state, std::span<const double> T_new, double dt,
                        const MaterialParams& params);
void damage_step_inplace(DamageState& state, std::span<const double> T_new, double dt, const MaterialParams& params);

}  // namespace litt
