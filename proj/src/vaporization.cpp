#include "litt/vaporization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace litt {

namespace {
constexpr double kLowCenter = 106.0;
constexpr double kLowScale = 3.42;
constexpr double kHighCenter = 80.0;
constexpr double kHighScale = 34.37;
constexpr double kWaterFraction = 0.8;
}  // namespace

double WaterModel::low_branch(double T_c) { return 1.0 - std::exp((T_c - kLowCenter) / kLowScale); }
double WaterModel::low_branch_slope(double T_c) { return -std::exp((T_c - kLowCenter) / kLowScale) / kLowScale; }
double WaterModel::high_branch(double T_c) { return std::exp(-(T_c - kHighCenter) / kHighScale); }
double WaterModel::high_branch_slope(double T_c) { return -std::exp(-(T_c - kHighCenter) / kHighScale) / kHighScale; }

double WaterModel::tabulated_spline(double T_c) {
  return ((3.712982e-2 * T_c - 11.47524) * T_c + 1.182046e3) * T_c - 4.058214e4;
}

WaterModel::WaterModel() {
  // Hermite data on a unit interval: values and slopes of the neighbouring
  // branches at the two knots.
  const double p0 = low_branch(kKnotLowC);
  const double m0 = low_branch_slope(kKnotLowC);
  const double p1 = high_branch(kKnotHighC);
  const double m1 = high_branch_slope(kKnotHighC);
  c_ = {p0, m0, 3.0 * (p1 - p0) - 2.0 * m0 - m1, 2.0 * (p0 - p1) + m0 + m1};
}

double WaterModel::spline(double T_c) const {
  const double s = T_c - kKnotLowC;
  return ((c_[3] * s + c_[2]) * s + c_[1]) * s + c_[0];
}

double WaterModel::spline_slope(double T_c) const {
  const double s = T_c - kKnotLowC;
  return (3.0 * c_[3] * s + 2.0 * c_[2]) * s + c_[1];
}

double WaterModel::density(double T) const {
  const double T_c = to_celsius(T);
  if (T_c <= kKnotLowC) return kAmplitude * low_branch(T_c);
  if (T_c <= kKnotHighC) return kAmplitude * spline(T_c);
  return kAmplitude * high_branch(T_c);
}

double WaterModel::slope(double T) const {
  const double T_c = to_celsius(T);
  if (T_c <= kKnotLowC) return kAmplitude * low_branch_slope(T_c);
  if (T_c <= kKnotHighC) return kAmplitude * spline_slope(T_c);
  return kAmplitude * high_branch_slope(T_c);
}

const WaterModel& water_model() {
  static const WaterModel model;
  return model;
}

double water_density(double T) { return water_model().density(T); }
double water_density_slope(double T) { return water_model().slope(T); }

double effective_capacity(double T, const MaterialParams& p) {
  return p.c_p - (p.lambda_latent / p.rho) * water_density_slope(T);
}

std::vector<double> effective_capacity(std::span<const double> T, const MaterialParams& p) {
  std::vector<double> c(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) c[i] = effective_capacity(T[i], p);
  return c;
}

double enthalpy_capacity(const MaterialParams& p) { return p.rho * kWaterFraction * p.lambda_latent; }

EnthalpyState EnthalpyState::initial(std::size_t n, const MaterialParams& p) {
  return {std::vector<double>(n, 0.0), enthalpy_capacity(p)};
}

ClampResult enthalpy_clamp(std::span<double> T, EnthalpyState& state, const MaterialParams& p,
                           std::span<const double> volumes) {
  if (T.size() != state.H.size() || T.size() != volumes.size())
    throw std::invalid_argument("enthalpy_clamp: size mismatch");
  const double rho_c = p.rho * p.c_p;
  ClampResult res;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (!std::isfinite(T[i])) throw std::invalid_argument("enthalpy_clamp: non-finite temperature");
    double& H = state.H[i];
    if (T[i] <= kBoilingPointK || H >= state.H_cap) continue;
    const double excess = rho_c * (T[i] - kBoilingPointK);
    const double room = state.H_cap - H;
    const double H_before = H;
    if (excess <= room) {
      H += excess;
      T[i] = kBoilingPointK;
    } else {
      H = state.H_cap;
      T[i] = kBoilingPointK + (excess - room) / rho_c;
    }
    res.delta_H_total += (H - H_before) * volumes[i];
    ++res.clamped_nodes;
  }
  return res;
}

LatentPower esh_latent_power(std::span<const double> T_old, std::span<const double> T_new, double dt,
                             const MaterialParams& p, std::span<const double> volumes) {
  if (!(dt > 0.0)) throw std::invalid_argument("esh_latent_power: dt must be > 0");
  if (T_old.size() != T_new.size() || T_new.size() != volumes.size())
    throw std::invalid_argument("esh_latent_power: size mismatch");
  LatentPower out;
  for (std::size_t i = 0; i < T_new.size(); ++i) {
    const double released = water_density(T_old[i]) - water_density(T_new[i]);
    const double power = p.lambda_latent * released * volumes[i] / dt;
    if (released > 0.0) out.power += power;
    else out.clipped -= power;
  }
  return out;
}

CondensationSource CondensationSource::zero(std::size_t n, CondensationWindow w) {
  CondensationSource s;
  s.q_cond.assign(n, 0.0);
  s.window = w;
  return s;
}

CondensationSource condensation_source(std::span<const double> volumes, std::span<const double> T, double q_bar_vap,
                                       CondensationWindow window) {
  if (!(q_bar_vap >= 0.0)) throw std::invalid_argument("condensation_source: latent power must be >= 0");
  if (T.size() != volumes.size()) throw std::invalid_argument("condensation_source: size mismatch");
  auto src = CondensationSource::zero(T.size(), window);
  src.q_bar_vap = q_bar_vap;
  for (std::size_t i = 0; i < T.size(); ++i)
    if (T[i] >= window.low && T[i] <= window.high) src.region_volume += volumes[i];
  if (q_bar_vap == 0.0) return src;
  if (!(src.region_volume > 0.0)) {
    src.discarded = q_bar_vap;
    return src;
  }
  const double density = q_bar_vap / src.region_volume;
  for (std::size_t i = 0; i < T.size(); ++i)
    if (T[i] >= window.low && T[i] <= window.high) src.q_cond[i] = density;
  return src;
}

}  // namespace litt
