#include "litt/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "litt/fem.hpp"
#include "litt/mesh.hpp"
#include "litt/radiative.hpp"
#include "litt/thermal.hpp"
#include "litt/vaporization.hpp"

namespace litt {

double stefan_zeta(double st) {
  if (!(st > 0.0)) throw std::invalid_argument("stefan_zeta: Stefan number must be > 0");
  const double target = st / std::sqrt(std::numbers::pi);
  auto f = [&](double z) { return z * std::exp(z * z) * std::erf(z) - target; };
  double lo = 0.0, hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

StefanResult run_stefan(const MaterialParams& params, const StefanSetup& s) {
  if (s.cells < 2 || !(s.dt > 0.0) || !(s.T_hot > kBoilingPointK))
    throw std::invalid_argument("run_stefan: need >= 2 cells, dt > 0 and T_hot above 100 C");
  std::vector<double> z_lines(s.cells + 1);
  for (int k = 0; k <= s.cells; ++k) z_lines[k] = s.length * k / s.cells;
  const std::vector<double> r_lines = {0.0, 0.5 * s.width, s.width};
  const double eps = 1e-12 * s.length;
  const auto mesh = build_tensor_mesh(
      r_lines, z_lines, [](double, double) { return true; },
      [&](Point m) {
        if (m.z < eps) return BoundaryTag::cool;
        if (m.r < eps) return BoundaryTag::axis;
        return BoundaryTag::amb;
      });

  HeatBoundary wall;
  wall.fixed[BoundaryTag::cool] = s.T_hot;
  MaterialParams p = params;
  p.xi_b = 0.0;
  const HeatSolver heat(mesh, p, wall);
  const auto& V = heat.volumes();

  const std::size_t n = mesh.num_nodes();
  std::vector<double> T(n, kBoilingPointK);
  const std::vector<double> c(n, p.c_p);
  const std::vector<double> q(n, 0.0);
  auto H = EnthalpyState::initial(n, p);

  double t = 0.0;
  while (s.t_end - t > 1e-9) {
    const double dt = std::min(s.dt, s.t_end - t);
    T = heat.step(T, c, q, dt, s.cg_rtol).T;
    enthalpy_clamp(T, H, p, V);
    t += dt;
  }

  StefanResult out;
  double vapour_volume = 0.0;
  for (std::size_t i = 0; i < n; ++i) vapour_volume += V[i] * H.H[i] / H.H_cap;
  out.front = vapour_volume / (std::numbers::pi * s.width * s.width);

  const double st = p.c_p * (s.T_hot - kBoilingPointK) / (0.8 * p.lambda_latent);
  const double alpha = p.kappa / (p.rho * p.c_p);
  out.zeta = stefan_zeta(st);
  out.front_exact = 2.0 * out.zeta * std::sqrt(alpha * t);
  out.relative_error = std::abs(out.front - out.front_exact) / out.front_exact;
  return out;
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

CheckResult check_knots() {
  const auto& w = water_model();
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  worst = std::max(worst, rel(w.spline(WaterModel::kKnotLowC), WaterModel::low_branch(WaterModel::kKnotLowC)));
  worst = std::max(worst, rel(w.spline_slope(WaterModel::kKnotLowC), WaterModel::low_branch_slope(WaterModel::kKnotLowC)));
  worst = std::max(worst, rel(w.spline(WaterModel::kKnotHighC), WaterModel::high_branch(WaterModel::kKnotHighC)));
  worst = std::max(worst,
                   rel(w.spline_slope(WaterModel::kKnotHighC), WaterModel::high_branch_slope(WaterModel::kKnotHighC)));
  return {"water density knot continuity", worst <= 1e-9, "max relative mismatch " + fmt(worst)};
}

CheckResult check_capacity(const MaterialParams& p) {
  double min_ratio = INFINITY, peak = 0.0;
  for (long k = 0; k <= 20000; ++k) {
    const double c = effective_capacity(to_kelvin(0.01 * k), p);
    min_ratio = std::min(min_ratio, c / p.c_p);
    peak = std::max(peak, c);
  }
  return {"effective capacity bound", min_ratio >= 1.0 && peak > 50.0 * p.c_p,
          "min C_p'/C_p " + fmt(min_ratio) + ", peak C_p'/C_p " + fmt(peak / p.c_p)};
}

CheckResult check_clamp(const MaterialParams& p) {
  const double rho_c = p.rho * p.c_p;
  const std::vector<double> V = {1.0, 1.0, 1.0};
  std::vector<double> T = {to_kelvin(105.0), to_kelvin(99.0), to_kelvin(105.0)};
  auto H = EnthalpyState::initial(3, p);
  H.H[2] = H.H_cap - rho_c;
  const auto before = T;
  const auto H_before = H.H;
  enthalpy_clamp(T, H, p, V);
  bool ok = std::abs(T[0] - kBoilingPointK) < 1e-9 && std::abs(H.H[0] - rho_c * 5.0) < 1e-6 * rho_c &&
            T[1] == before[1] && std::abs(T[2] - to_kelvin(104.0)) < 1e-9 && H.H[2] == H.H_cap;
  for (int i = 0; i < 3; ++i)
    ok = ok && std::abs(rho_c * (before[i] - T[i]) - (H.H[i] - H_before[i])) <= 1e-9 * H.H_cap;
  return {"enthalpy clamp arithmetic", ok, "T' = " + fmt(to_celsius(T[0])) + ", " + fmt(to_celsius(T[2])) + " C"};
}

CheckResult check_radiation(const MaterialParams& p, const RunSettings& s) {
  const auto mesh = build_mesh(s.geometry, s.mesh_h);
  const std::vector<double> omega(mesh.num_nodes(), 0.0);
  const RadiativeSolver solver(mesh);
  const double q = 30.0;
  const auto sol = solver.solve(optical_update(p, omega), {q, solver.area_rad()}, s.cg_rtol);
  const double err = std::abs(sol.absorbed + sol.outflow - q) / q;
  return {"radiative power balance", sol.report.converged && err <= 1e-6, "relative imbalance " + fmt(err)};
}

CheckResult check_condensation(const RunSettings& s) {
  const auto mesh = build_mesh(s.geometry, s.mesh_h);
  const auto V = lumped_volumes(mesh);
  std::vector<double> T(mesh.num_nodes());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = to_kelvin(100.0 - 2000.0 * mesh.nodes()[i].r);
  const double q_bar = 10.0;
  const auto src = condensation_source(V, T, q_bar, {s.T_cond_low, s.T_cond_high});
  const double err = std::abs(integrate(V, src.q_cond) - q_bar) / q_bar;
  return {"condensation conservation", src.region_volume > 0.0 && err <= 1e-10, "relative error " + fmt(err)};
}

CheckResult check_stefan(const MaterialParams& p) {
  StefanSetup setup;
  const auto res = run_stefan(p, setup);
  return {"one-phase Stefan front", res.relative_error <= 0.05,
          "front " + fmt(res.front * 1e3) + " mm vs " + fmt(res.front_exact * 1e3) + " mm (error " +
              fmt(100.0 * res.relative_error) + " %)"};
}

}  // namespace

std::vector<CheckResult> run_builtin_checks(const MaterialParams& params, const RunSettings& settings) {
  return {check_knots(),
          check_capacity(params),
          check_clamp(params),
          check_radiation(params, settings),
          check_condensation(settings),
          check_stefan(params)};
}

}  // namespace litt
