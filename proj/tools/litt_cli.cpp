// Command-line front end: run, sweep, cases, verify.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "litt/config.hpp"
#include "litt/driver.hpp"
#include "litt/output.hpp"
#include "litt/verify.hpp"

namespace {

constexpr const char* kOutputRootEnv = "LITT_OUTPUT_ROOT";

const char* kFooter = R"(Output files (per run directory <out>/<case>_<model>/):
  timeseries.csv   one row per time step, columns
                   t_s,T_probe_C,T_max_C,Qvap_W,Qcond_discarded_W,H_total_J,omega_probe,cg_iters_heat,cg_iters_rad
  snapshots/*.csv  nodal fields node,r_m,z_m,T_C,phi_W_m2,omega,H_J_m3
  metadata.json    resolved configuration, code version, solver diagnostics
  comparison.csv   (sweep only) t_s and T_probe_C per condensation window

Temperatures are in Celsius, lengths in metres, powers in W.
Environment: LITT_OUTPUT_ROOT overrides the default output directory.
Exit codes: 0 success, 1 run or check failure, 2 usage error.)";

struct Window {
  double low_c = 0.0;
  double high_c = 0.0;
};

std::optional<Window> parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    Window w;
    const std::string lo = s.substr(0, colon), hi = s.substr(colon + 1);
    w.low_c = std::stod(lo, &used);
    if (used != lo.size()) return std::nullopt;
    w.high_c = std::stod(hi, &used);
    if (used != hi.size()) return std::nullopt;
    return w;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct CommonFlags {
  std::string case_label = "P34F47";
  std::string model = "enthalpy";
  std::string config_path;
  std::optional<double> dt;
  std::optional<double> mesh_h_mm;
  std::optional<double> beta_q;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--case", f.case_label, "Experiment label (see `cases`)")->capture_default_str();
  cmd->add_option("--model", f.model, "Vaporization model: none, esh, enthalpy")
      ->check(CLI::IsMember({"none", "esh", "enthalpy"}))
      ->capture_default_str();
  cmd->add_option("--config", f.config_path, "Configuration file");
  cmd->add_option("--dt", f.dt, "Time step in s (default 1)");
  cmd->add_option("--mesh-h", f.mesh_h_mm, "Target element size in mm (default 2)");
  cmd->add_option("--beta-q", f.beta_q, "Fraction of laser power absorbed by the coolant (default 0.1)");
  cmd->add_option("--out", f.out, "Output directory (default litt_out, or $LITT_OUTPUT_ROOT)");
}

struct Resolved {
  litt::CaseSpec case_spec;
  litt::MaterialParams params;
  litt::RunSettings settings;
  std::filesystem::path out;
};

// Returns the exit code on failure.
std::optional<int> resolve(const CommonFlags& f, Resolved& r) {
  litt::Config cfg;
  if (!f.config_path.empty()) cfg = litt::load_config(f.config_path);
  try {
    r.case_spec = cfg.case_override.apply(litt::find_case(f.case_label));
  } catch (const litt::CaseNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  r.params = cfg.material;
  r.settings = cfg.run;
  r.settings.model = litt::parse_vapor_model(f.model);
  if (f.dt) r.settings.dt = *f.dt;
  if (f.mesh_h_mm) r.settings.mesh_h = *f.mesh_h_mm * 1e-3;
  if (f.beta_q) r.settings.beta_q = *f.beta_q;
  if (!f.out.empty()) {
    r.settings.output_dir = f.out;
  } else if (const char* env = std::getenv(kOutputRootEnv); env && *env) {
    r.settings.output_dir = env;
  }
  r.settings.validate();
  r.case_spec.validate();
  r.out = r.settings.output_dir;
  return std::nullopt;
}

void print_summary(const litt::RunResult& res) {
  const auto& last = res.log.back();
  std::printf("%s (%s): %zu steps on %zu nodes\n", res.case_spec.label.c_str(),
              std::string(litt::to_string(res.settings.model)).c_str(), res.log.size(), res.mesh_nodes);
  std::printf("  max probe temperature   %.3f C\n", litt::to_celsius(res.max_probe_temperature()));
  std::printf("  final probe temperature %.3f C\n", litt::to_celsius(last.T_probe));
  std::printf("  final max temperature   %.3f C\n", litt::to_celsius(last.T_max));
  if (!res.output_dir.empty()) std::printf("  output: %s\n", res.output_dir.string().c_str());
  for (const auto& w : res.warnings) std::printf("  warning: %s\n", w.c_str());
}

int cmd_cases() {
  std::printf("%-8s %8s %10s %7s %7s %7s %8s %8s\n", "label", "q_hat_W", "flow_ml_m", "t_on_s", "t_off_s", "t_end_s",
              "d_r_mm", "d_z_mm");
  for (const auto& c : litt::builtin_cases())
    std::printf("%-8s %8.1f %10.1f %7.0f %7.0f %7.0f %8.1f %8.1f\n", c.label.c_str(), c.q_hat, c.flow_rate, c.t_on,
                c.t_off, c.t_end, c.d_r * 1e3, c.d_z * 1e3);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laser-induced thermotherapy simulator with tissue vaporization"};
  app.footer(kFooter);
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string tcond = "60:80";
  bool no_snapshots = false, dump_mesh = false;
  auto* run = app.add_subcommand("run", "Simulate one experiment");
  add_common(run, run_flags);
  auto* tcond_opt = run->add_option("--tcond", tcond, "Condensation window lo:hi in C (overrides the config file)")
                        ->capture_default_str();
  run->add_flag("--no-snapshots", no_snapshots, "Skip field snapshots");
  run->add_flag("--dump-mesh", dump_mesh, "Write mesh.txt next to the results");

  CommonFlags sweep_flags;
  std::string windows = "60:80,70:90";
  auto* sweep = app.add_subcommand("sweep", "Compare condensation windows on one experiment");
  add_common(sweep, sweep_flags);
  sweep->add_option("--windows", windows, "Comma-separated lo:hi windows in C")->capture_default_str();

  app.add_subcommand("cases", "Print the built-in experiments");

  std::string verify_config;
  auto* verify = app.add_subcommand("verify", "Run built-in model checks");
  verify->add_option("--config", verify_config, "Configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand("cases")) return cmd_cases();

    if (app.got_subcommand("verify")) {
      litt::Config cfg;
      if (!verify_config.empty()) cfg = litt::load_config(verify_config);
      bool ok = true;
      for (const auto& c : litt::run_builtin_checks(cfg.material, cfg.run)) {
        std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        ok = ok && c.passed;
      }
      return ok ? 0 : 1;
    }

    if (app.got_subcommand("run")) {
      Resolved r;
      if (auto code = resolve(run_flags, r)) return *code;
      if (tcond_opt->count() > 0) {
        const auto w = parse_window(tcond);
        if (!w) {
          std::cerr << "error: --tcond expects lo:hi in C, got '" << tcond << "'\n";
          return 2;
        }
        r.settings.T_cond_low = litt::to_kelvin(w->low_c);
        r.settings.T_cond_high = litt::to_kelvin(w->high_c);
        r.settings.validate();
      }
      litt::RunOptions opts;
      opts.output_dir = r.out / litt::run_name(r.case_spec, r.settings);
      opts.write_snapshots = !no_snapshots;
      opts.write_mesh = dump_mesh;
      print_summary(litt::run_case(r.case_spec, r.params, r.settings, opts));
      return 0;
    }

    if (app.got_subcommand("sweep")) {
      Resolved r;
      if (auto code = resolve(sweep_flags, r)) return *code;
      std::vector<litt::CondensationWindow> ws;
      std::size_t pos = 0;
      while (pos <= windows.size()) {
        const auto comma = windows.find(',', pos);
        const auto item = windows.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto w = parse_window(item);
        if (!w) {
          std::cerr << "error: --windows expects lo:hi[,lo:hi...] in C, got '" << item << "'\n";
          return 2;
        }
        ws.push_back({litt::to_kelvin(w->low_c), litt::to_kelvin(w->high_c)});
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (ws.size() < 2) {
        std::cerr << "error: --windows needs at least two windows\n";
        return 2;
      }
      litt::RunOptions opts;
      opts.output_dir = r.out / (litt::run_name(r.case_spec, r.settings) + "_sweep");
      for (const auto& res : litt::run_sensitivity(r.case_spec, r.params, r.settings, ws, opts))
        print_summary(res);
      std::printf("comparison: %s\n", (opts.output_dir / "comparison.csv").string().c_str());
      return 0;
    }
  } catch (const litt::ValidationError& e) {
    std::cerr << "error: invalid setting " << e.what() << "\n";
    return 2;
  } catch (const litt::ConfigError& e) {
    std::cerr << "error: config " << e.what() << "\n";
    return 2;
  } catch (const litt::RunFailed& e) {
    std::cerr << "error: run failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
