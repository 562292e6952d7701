#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "litt/driver.hpp"
#include "litt/output.hpp"

using namespace litt;
namespace fs = std::filesystem;

namespace {

CaseSpec short_case() {
  CaseSpec c;
  c.label = "SHORT";
  c.q_hat = 60.0;
  c.t_on = 2.0;
  c.t_off = 70.0;
  c.t_end = 80.0;
  c.d_r = 4e-3;
  c.d_z = 10e-3;
  return c;
}

RunSettings coarse(VaporModel m) {
  RunSettings s;
  s.model = m;
  s.mesh_h = 4e-3;
  s.snapshot_every = 20;
  return s;
}

fs::path scratch(const std::string& name) {
  const char* root = std::getenv("LITT_TEST_TMP");
  const fs::path dir = fs::path(root ? root : fs::temp_directory_path().string()) / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("short enthalpy run vaporizes and conserves condensation energy") {
  const auto res = run_case(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), {});
  REQUIRE(res.log.size() == 80);
  double vaporized = 0.0;
  int audited = 0;
  for (std::size_t k = 0; k < res.log.size(); ++k) {
    const auto& r = res.log[k];
    if (r.q_app > 0.0) CHECK(std::abs(r.absorbed + r.marshak_outflow - r.q_app) <= 1e-6 * r.q_app);
    vaporized += r.latent_energy;
    if (k > 0 && res.log[k - 1].cond_region_volume > 0.0 && res.log[k - 1].latent_energy > 0.0) {
      CHECK(std::abs(r.cond_injected - res.log[k - 1].latent_energy) <= 1e-9 * res.log[k - 1].latent_energy);
      ++audited;
    }
    CHECK(r.H_total >= (k ? res.log[k - 1].H_total : 0.0));
  }
  CHECK(vaporized > 0.0);
  CHECK(audited > 0);
  CHECK(res.log.back().H_total == doctest::Approx(vaporized).epsilon(1e-9));
}

TEST_CASE("model none never stores latent heat") {
  const auto res = run_case(short_case(), MaterialParams{}, coarse(VaporModel::none), {});
  for (const auto& r : res.log) {
    CHECK(r.q_vap == 0.0);
    CHECK(r.H_total == 0.0);
    CHECK(r.cond_injected == 0.0);
  }
}

TEST_CASE("ESH run records sweeps") {
  const auto res = run_case(short_case(), MaterialParams{}, coarse(VaporModel::esh), {});
  int sweeps = 0;
  for (const auto& r : res.log) {
    CHECK(r.esh_sweeps >= 1);
    sweeps += r.esh_sweeps;
    CHECK(r.H_total == 0.0);
  }
  CHECK(sweeps > int(res.log.size()));
}

TEST_CASE("runs are deterministic") {
  std::ostringstream a, b;
  write_time_series(a, run_case(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), {}).log);
  write_time_series(b, run_case(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), {}).log);
  CHECK(a.str() == b.str());
}

TEST_CASE("final step is shortened to hit t_end") {
  auto c = short_case();
  c.t_end = 5.0;
  c.t_off = 5.0;
  auto s = coarse(VaporModel::enthalpy);
  s.dt = 0.7;
  Simulation sim(make_mesh(s), c, MaterialParams{}, s);
  sim.run();
  CHECK(sim.log().size() == 8);
  CHECK(sim.state().t == 5.0);
  CHECK(sim.done());
  CHECK_THROWS_AS(sim.step(), SimulationError);
}

TEST_CASE("invalid inputs are rejected before running") {
  auto c = short_case();
  c.t_on = 100.0;
  CHECK_THROWS_AS(run_case(c, MaterialParams{}, coarse(VaporModel::none), {}), ValidationError);
  c = short_case();
  c.d_r = 0.5e-3;
  CHECK_THROWS_AS(run_case(c, MaterialParams{}, coarse(VaporModel::none), {}), OutsideDomain);
  auto s = coarse(VaporModel::none);
  s.dt = -1.0;
  CHECK_THROWS_AS(run_case(short_case(), MaterialParams{}, s, {}), ValidationError);
}

TEST_CASE("run output files") {
  const auto dir = scratch("driver_run");
  RunOptions o;
  o.output_dir = dir;
  o.write_mesh = true;
  const auto res = run_case(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), o);
  CHECK(res.output_dir == dir);

  std::ifstream ts(dir / "timeseries.csv");
  std::string line;
  std::getline(ts, line);
  CHECK(line == kTimeSeriesHeader);
  int rows = 0;
  while (std::getline(ts, line)) ++rows;
  CHECK(rows == 80);

  int snaps = 0;
  for (const auto& e : fs::directory_iterator(dir / "snapshots")) {
    ++snaps;
    std::ifstream s(e.path());
    std::getline(s, line);
    CHECK(line == kSnapshotHeader);
  }
  CHECK(snaps == 5);
  CHECK(fs::exists(dir / "snapshots" / "field_t0ms.csv"));
  CHECK(fs::exists(dir / "snapshots" / "field_t80000ms.csv"));
  CHECK(fs::exists(dir / "mesh.txt"));

  const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
  CHECK(meta["status"] == "completed");
  CHECK(meta["model"] == "enthalpy");
  CHECK(meta["solver"]["preconditioner"] == "jacobi");
  CHECK(meta["diagnostics"]["steps"] == 80);
  CHECK(parse_config(meta["config"].get<std::string>()).run.mesh_h == 4e-3);
}

TEST_CASE("sensitivity sweep") {
  const auto dir = scratch("driver_sweep");
  RunOptions o;
  o.output_dir = dir;
  o.write_snapshots = false;
  const std::vector<CondensationWindow> w = {{to_kelvin(60.0), to_kelvin(80.0)}, {to_kelvin(70.0), to_kelvin(90.0)}};
  const auto runs = run_sensitivity(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), w, o);
  REQUIRE(runs.size() == 2);
  CHECK(runs[1].settings.T_cond_low == to_kelvin(70.0));
  std::ifstream cmp(dir / "comparison.csv");
  std::string header;
  std::getline(cmp, header);
  CHECK(header == "t_s,T_probe_C[60:80],T_probe_C[70:90]");
  CHECK(fs::exists(dir / "window0_60_80" / "timeseries.csv"));
  CHECK(fs::exists(dir / "window1_70_90" / "timeseries.csv"));

  const auto serial = run_sensitivity(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), w, {}, false);
  for (std::size_t k = 0; k < 2; ++k) CHECK(serial[k].log.back().T_probe == runs[k].log.back().T_probe);

  CHECK_THROWS_AS(run_sensitivity(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), {w[0]}, {}),
                  std::invalid_argument);
  const std::vector<CondensationWindow> inverted = {w[0], {to_kelvin(90.0), to_kelvin(70.0)}};
  CHECK_THROWS_AS(run_sensitivity(short_case(), MaterialParams{}, coarse(VaporModel::enthalpy), inverted, {}),
                  ValidationError);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(1.0) == "1");
}
