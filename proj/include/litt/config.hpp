#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace litt {

inline constexpr double kCelsiusOffset = 273.15;
inline constexpr double kBoilingPointK = 373.15;

constexpr double to_kelvin(double celsius) { return celsius + kCelsiusOffset; }
constexpr double to_celsius(double kelvin) { return kelvin - kCelsiusOffset; }

/// Malformed configuration text. Carries the 1-based line number when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

/// A field violates its invariant. `field()` is the dotted key of the offender.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class CaseNotFound : public std::out_of_range {
 public:
  explicit CaseNotFound(const std::string& label);
};

// Defaults are the ex-vivo porcine liver values used throughout.
struct MaterialParams {
  double mu_a_native = 50.0;     // 1/m
  double mu_s_native = 8000.0;   // 1/m
  double g_native = 0.97;
  double mu_a_coag = 60.0;
  double mu_s_coag = 30000.0;
  double g_coag = 0.95;
  double kappa = 0.518;          // W/(m K)
  double c_p = 3640.0;           // J/(kg K)
  double rho = 1137.0;           // kg/m^3
  double alpha_cool = 250.0;     // W/(m^2 K)
  double alpha_amb = 44.0;
  double A_freq = 3.1e98;        // 1/s
  double E_a = 6.3e5;            // J/mol
  double R_gas = 8.31;           // J/(mol K)
  double lambda_latent = 2257e3; // J/kg
  double xi_b = 0.0;             // W/(m^3 K)
  double T_b = to_kelvin(37.0);  // K

  void validate() const;
  bool operator==(const MaterialParams&) const = default;
};

struct CaseSpec {
  std::string label;
  double q_hat = 0.0;      // W
  double flow_rate = 0.0;  // ml/min, not used by the model
  double t_on = 0.0;       // s
  double t_off = 0.0;
  double t_end = 0.0;
  double d_r = 0.0;        // m
  double d_z = 0.0;        // m

  void validate() const;
  bool operator==(const CaseSpec&) const = default;
};

enum class VaporModel { none, esh, enthalpy };

std::string_view to_string(VaporModel m);
VaporModel parse_vapor_model(std::string_view s);

struct Geometry {
  double domain_radius = 60e-3;     // m
  double domain_height = 120e-3;
  double applicator_radius = 1.5e-3;
  double diffuser_length = 30e-3;
  double applicator_depth = 50e-3;
  // Element size next to the applicator is mesh_h / near_refine.
  double near_refine = 4.0;

  void validate() const;
  bool operator==(const Geometry&) const = default;
};

struct RunSettings {
  VaporModel model = VaporModel::enthalpy;
  double beta_q = 0.1;
  double T_init = to_kelvin(20.0);  // K
  double T_amb = to_kelvin(20.0);
  double T_cool = to_kelvin(20.0);
  double T_cond_low = to_kelvin(60.0);
  double T_cond_high = to_kelvin(80.0);
  double dt = 1.0;                  // s
  double mesh_h = 2e-3;             // m
  Geometry geometry;
  double cg_rtol = 1e-10;
  int cg_max_iter = 0;              // 0: 10 * unknowns
  std::string output_dir = "litt_out";
  int snapshot_every = 60;          // steps, 0 disables
  int radiation_every = 1;
  double esh_tol = 0.01;            // K
  int esh_max_sweeps = 5;
  bool esh_single_sweep = false;

  void validate() const;
  bool operator==(const RunSettings&) const = default;
};

/// Optional per-run overrides of a case's schedule and probe position.
struct CaseOverride {
  std::optional<double> q_hat, flow_rate, t_on, t_off, t_end, d_r, d_z;

  CaseSpec apply(CaseSpec base) const;
  bool empty() const;
  bool operator==(const CaseOverride&) const = default;
};

struct Config {
  MaterialParams material;
  RunSettings run;
  CaseOverride case_override;

  bool operator==(const Config&) const = default;
};

/// Parses the sectioned `key = value` format. Temperatures are read in
/// Celsius, geometry and probe lengths in millimetres, everything else SI.
/// Lengths and temperatures may carry an explicit unit (`m`, `mm`, `K`, `C`).
/// Absent keys keep their defaults; unknown keys are rejected.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Inverse of parse_config: parse_config(write_config(c)) == c exactly.
std::string write_config(const Config& cfg);

/// The nine ex-vivo experiments, lengths converted to metres.
const std::vector<CaseSpec>& builtin_cases();
const CaseSpec& find_case(std::string_view label);
std::vector<std::string> case_labels();

}  // namespace litt
