#include <doctest.h>

#include <random>
#include <string>

#include "litt/config.hpp"

using namespace litt;

TEST_CASE("default material parameters are the porcine liver values") {
  const MaterialParams p;
  CHECK(p.mu_a_native == 50.0);
  CHECK(p.mu_s_native == 8000.0);
  CHECK(p.g_native == 0.97);
  CHECK(p.mu_a_coag == 60.0);
  CHECK(p.mu_s_coag == 30000.0);
  CHECK(p.g_coag == 0.95);
  CHECK(p.kappa == 0.518);
  CHECK(p.c_p == 3640.0);
  CHECK(p.rho == 1137.0);
  CHECK(p.alpha_cool == 250.0);
  CHECK(p.alpha_amb == 44.0);
  CHECK(p.A_freq == 3.1e98);
  CHECK(p.E_a == 6.3e5);
  CHECK(p.R_gas == 8.31);
  CHECK(p.lambda_latent == 2257e3);
  CHECK_NOTHROW(p.validate());
  CHECK_NOTHROW(RunSettings{}.validate());
}

TEST_CASE("builtin cases") {
  const auto& cases = builtin_cases();
  REQUIRE(cases.size() == 9);
  const auto& c = find_case("P34F47");
  CHECK(c.q_hat == 33.8);
  CHECK(c.t_on == 18.0);
  CHECK(c.t_off == 1206.0);
  CHECK(c.t_end == 1218.0);
  CHECK(c.d_r == doctest::Approx(11.2e-3));
  CHECK(c.d_z == doctest::Approx(23.8e-3));
  for (const auto& k : cases) {
    CHECK_NOTHROW(k.validate());
    CHECK(k.t_on < k.t_off);
    CHECK(k.t_off <= k.t_end);
  }
  CHECK(case_labels().size() == 9);
}

TEST_CASE("unknown case lists the valid labels") {
  try {
    find_case("P99F99");
    FAIL("expected CaseNotFound");
  } catch (const CaseNotFound& e) {
    const std::string msg = e.what();
    CHECK(msg.find("P99F99") != std::string::npos);
    CHECK(msg.find("P22F47") != std::string::npos);
    CHECK(msg.find("P34F92") != std::string::npos);
  }
}

TEST_CASE("vapor model names") {
  CHECK(parse_vapor_model("none") == VaporModel::none);
  CHECK(parse_vapor_model("esh") == VaporModel::esh);
  CHECK(parse_vapor_model("enthalpy") == VaporModel::enthalpy);
  CHECK(to_string(VaporModel::esh) == "esh");
  CHECK_THROWS_AS(parse_vapor_model("steam"), ValidationError);
}

TEST_CASE("parse sections, units and comments") {
  const auto cfg = parse_config(R"(
# liver sample
[thermal]
kappa = 0.6      ; inline comment
T_b = 37.5

[run]
model = "esh"
T_init = 22
dt = 0.5
esh_single_sweep = true

[geometry]
mesh_h = 3

[case]
d_r = 12.5
)");
  CHECK(cfg.material.kappa == 0.6);
  CHECK(cfg.material.T_b == doctest::Approx(to_kelvin(37.5)));
  CHECK(cfg.run.model == VaporModel::esh);
  CHECK(cfg.run.T_init == doctest::Approx(295.15));
  CHECK(cfg.run.T_amb == cfg.run.T_init);
  CHECK(cfg.run.dt == 0.5);
  CHECK(cfg.run.esh_single_sweep);
  CHECK(cfg.run.mesh_h == doctest::Approx(3e-3));
  REQUIRE(cfg.case_override.d_r.has_value());
  CHECK(*cfg.case_override.d_r == doctest::Approx(12.5e-3));
  const auto c = cfg.case_override.apply(find_case("P34F47"));
  CHECK(c.d_r == doctest::Approx(12.5e-3));
  CHECK(c.d_z == doctest::Approx(23.8e-3));
}

TEST_CASE("dotted keys at top level") {
  const auto cfg = parse_config("thermal.rho = 1000\nrun.T_amb = 25\nrun.T_init = 30\n");
  CHECK(cfg.material.rho == 1000.0);
  CHECK(cfg.run.T_amb == doctest::Approx(298.15));
  CHECK(cfg.run.T_init == doctest::Approx(303.15));
}

TEST_CASE("explicit units") {
  const auto cfg = parse_config("[geometry]\nmesh_h = 0.0025 m\napplicator_radius = 1.2 mm\n[run]\nT_init = 300 K\nT_cool = 15 C\n");
  CHECK(cfg.run.mesh_h == 0.0025);
  CHECK(cfg.run.geometry.applicator_radius == doctest::Approx(1.2e-3));
  CHECK(cfg.run.T_init == 300.0);
  CHECK(cfg.run.T_cool == doctest::Approx(288.15));
  CHECK_THROWS_AS(parse_config("[run]\nT_init = 300 m\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ndt = 1 s\n"), ConfigError);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("[thermal]\nkappa = 0.5\nbogus = 1\n") == 3);
  CHECK(line_of("[thermal]\nkappa = 0.5\nkappa = 0.6\n") == 3);
  CHECK(line_of("[run]\ndt = fast\n") == 2);
  CHECK(line_of("[run\n") == 1);
  CHECK(line_of("just words\n") == 1);
}

TEST_CASE("validation names the offending field") {
  try {
    parse_config("[run]\nbeta_q = 1.5\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "run.beta_q");
  }
  CHECK_THROWS_AS(parse_config("[vaporization]\nT_cond_low = 90\nT_cond_high = 80\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[thermal]\nrho = -1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[geometry]\ndiffuser_length = 80\n"), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/litt.cfg"), std::runtime_error);
}

TEST_CASE("write_config round-trips defaults exactly") {
  const Config cfg;
  CHECK(parse_config(write_config(cfg)) == cfg);
}

TEST_CASE("write_config round-trips random values exactly") {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Config cfg;
    auto& m = cfg.material;
    m.mu_a_native = 1.0 + 100.0 * u(rng);
    m.mu_s_native = 1e3 + 1e4 * u(rng);
    m.g_native = 0.99 * u(rng);
    m.kappa = 0.1 + u(rng);
    m.c_p = 1000.0 + 4000.0 * u(rng);
    m.rho = 900.0 + 300.0 * u(rng);
    m.A_freq = std::pow(10.0, 50.0 + 60.0 * u(rng));
    m.T_b = to_kelvin(30.0 + 10.0 * u(rng));
    auto& r = cfg.run;
    r.model = trial % 3 == 0 ? VaporModel::none : (trial % 3 == 1 ? VaporModel::esh : VaporModel::enthalpy);
    r.beta_q = 0.5 * u(rng);
    r.T_init = to_kelvin(15.0 + 10.0 * u(rng));
    r.T_amb = to_kelvin(15.0 + 10.0 * u(rng));
    r.T_cond_low = to_kelvin(50.0 + 10.0 * u(rng));
    r.T_cond_high = to_kelvin(70.0 + 20.0 * u(rng));
    r.dt = 0.1 + u(rng);
    r.mesh_h = 1e-3 + 3e-3 * u(rng);
    r.geometry.applicator_radius = 1e-3 + 1e-3 * u(rng);
    r.esh_max_sweeps = 1 + trial % 7;
    r.esh_single_sweep = trial % 2 == 0;
    r.output_dir = "out dir " + std::to_string(trial);
    if (trial % 4 == 0) cfg.case_override.d_z = 0.03 * u(rng);
    if (trial % 5 == 0) cfg.case_override.q_hat = 40.0 * u(rng);
    const auto text = write_config(cfg);
    CAPTURE(text);
    REQUIRE(parse_config(text) == cfg);
  }
}
