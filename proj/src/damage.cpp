#include "litt/damage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace litt {

namespace {
constexpr double kOmegaCap = 700.0;
// exp(x) underflows to zero below about -745.
constexpr double kMinExponent = -745.0;
}  // namespace

double arrhenius_rate(double T, const MaterialParams& params) {
  if (!(T > 0.0)) throw std::invalid_argument("arrhenius_rate: temperature must be > 0 K");
  const double exponent = std::log(params.A_freq) - params.E_a / (params.R_gas * T);
  if (exponent < kMinExponent) return 0.0;
  return std::exp(exponent);
}

double coagulation_fraction(double omega) { return -std::expm1(-std::min(omega, kOmegaCap)); }

void damage_step_inplace(DamageState& state, std::span<const double> T_new, double dt, const MaterialParams& params) {
  if (!(dt >= 0.0)) throw std::invalid_argument("damage_step: dt must be >= 0");
  if (T_new.size() != state.omega.size()) throw std::invalid_argument("damage_step: size mismatch");
  if (dt == 0.0) return;
  for (std::size_t i = 0; i < T_new.size(); ++i) state.omega[i] += dt * arrhenius_rate(T_new[i], params);
}

DamageState damage_step(const DamageState& state, std::span<const double> T_new, double dt,
                        const MaterialParams& params) {
  DamageState out = state;
  damage_step_inplace(out, T_new, dt, params);
  return out;
}

}  // namespace litt
