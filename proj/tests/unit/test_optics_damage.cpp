#include <doctest.h>

#include <cmath>

#include "litt/damage.hpp"
#include "litt/mesh.hpp"
#include "litt/radiative.hpp"

using namespace litt;

TEST_CASE("laser schedule") {
  const auto& c = find_case("P34F47");
  CHECK(laser_power(0.0, c, 0.1) == 0.0);
  CHECK(laser_power(17.0, c, 0.1) == 0.0);
  CHECK(laser_power(18.0, c, 0.1) == doctest::Approx(0.9 * 33.8));
  CHECK(laser_power(600.0, c, 0.1) == doctest::Approx(0.9 * 33.8));
  CHECK(laser_power(1206.0, c, 0.1) == doctest::Approx(0.9 * 33.8));
  CHECK(laser_power(1207.0, c, 0.1) == 0.0);
  CHECK(laser_power(600.0, c, 0.0) == 33.8);
}

TEST_CASE("diffusion coefficient of native and coagulated tissue") {
  const MaterialParams p;
  CHECK(diffusion_coefficient(p.mu_a_native, p.mu_s_native, p.g_native) ==
        doctest::Approx(0.001149425287356321).epsilon(1e-14));
  CHECK(diffusion_coefficient(p.mu_a_coag, p.mu_s_coag, p.g_coag) ==
        doctest::Approx(0.0002136752136752135).epsilon(1e-14));
}

TEST_CASE("optical blend follows the coagulated fraction") {
  const MaterialParams p;
  const std::vector<double> omega = {0.0, std::log(2.0), 50.0, 700.0, 1e6};
  const auto f = optical_update(p, omega);
  CHECK(f.mu_a[0] == p.mu_a_native);
  CHECK(f.mu_s[0] == p.mu_s_native);
  CHECK(f.g[0] == p.g_native);
  CHECK(f.mu_a[1] == doctest::Approx(0.5 * (p.mu_a_native + p.mu_a_coag)).epsilon(1e-14));
  CHECK(f.mu_s[1] == doctest::Approx(0.5 * (p.mu_s_native + p.mu_s_coag)).epsilon(1e-14));
  for (int k = 2; k < 5; ++k) {
    CHECK(f.mu_a[k] == doctest::Approx(p.mu_a_coag));
    CHECK(f.g[k] == doctest::Approx(p.g_coag));
    CHECK(std::isfinite(f.D[k]));
  }
  CHECK(coagulation_fraction(0.0) == 0.0);
  CHECK(coagulation_fraction(1e300) == 1.0);
  CHECK_THROWS_AS(optical_update(p, std::vector<double>{-1.0}), std::invalid_argument);
}

TEST_CASE("P1 solution balances the injected power and is linear in it") {
  const auto mesh = build_mesh(Geometry{}, 4e-3);
  const RadiativeSolver solver(mesh);
  const MaterialParams p;
  std::vector<double> omega(mesh.num_nodes(), 0.0);
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (mesh.nodes()[i].r < 6e-3 && mesh.nodes()[i].z < 0.03) omega[i] = 3.0;
  const auto optics = optical_update(p, omega);

  for (double q : {1.0, 19.9, 30.42}) {
    const auto sol = solver.solve(optics, {q, solver.area_rad()}, 1e-10);
    REQUIRE(sol.report.converged);
    CHECK(std::abs(sol.absorbed + sol.outflow - q) <= 1e-6 * q);
    CHECK(sol.absorbed > 0.0);
    CHECK(sol.outflow >= 0.0);
    for (double v : sol.phi) CHECK(v > 0.0);
  }
  const auto a = solver.solve(optics, {10.0, solver.area_rad()}, 1e-12);
  const auto b = solver.solve(optics, {20.0, solver.area_rad()}, 1e-12);
  for (std::size_t i = 0; i < a.phi.size(); i += 17) CHECK(b.phi[i] == doctest::Approx(2.0 * a.phi[i]).epsilon(1e-8));

  const auto off = solver.solve(optics, {0.0, solver.area_rad()}, 1e-10);
  CHECK(off.absorbed == 0.0);
  for (double v : off.phi) CHECK(v == 0.0);

  const auto free = solve_p1(mesh, optics, {10.0, 0.0}, 1e-10);
  CHECK(free.absorbed + free.outflow == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("Arrhenius rate oracle values") {
  const MaterialParams p;
  CHECK(arrhenius_rate(310.0, p) == doctest::Approx(1.91496e-8).epsilon(1e-5));
  CHECK(arrhenius_rate(333.0, p) == doctest::Approx(0.414888).epsilon(1e-5));
  CHECK(arrhenius_rate(373.0, p) == doctest::Approx(1.66334e10).epsilon(1e-5));
  CHECK(arrhenius_rate(10.0, p) == 0.0);
  double prev = 0.0;
  for (double T = 280.0; T <= 500.0; T += 1.0) {
    const double k = arrhenius_rate(T, p);
    CHECK(std::isfinite(k));
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("damage integrates with the right-hand rule") {
  const MaterialParams p;
  DamageState s{{0.0, 1.0}};
  const std::vector<double> T = {333.0, 310.0};
  const auto next = damage_step(s, T, 2.0, p);
  CHECK(next.omega[0] == doctest::Approx(2.0 * arrhenius_rate(333.0, p)).epsilon(1e-14));
  CHECK(next.omega[1] == doctest::Approx(1.0 + 2.0 * arrhenius_rate(310.0, p)).epsilon(1e-14));
  const auto same = damage_step(s, T, 0.0, p);
  CHECK(same.omega == s.omega);
  damage_step_inplace(s, T, 2.0, p);
  CHECK(s.omega == next.omega);
  CHECK_THROWS(damage_step(s, std::vector<double>{333.0}, 1.0, p));
}
