#include "litt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

namespace litt {

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

ValidationError::ValidationError(std::string field, const std::string& what)
    : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

namespace {

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

CaseNotFound::CaseNotFound(const std::string& label)
    : std::out_of_range("unknown case '" + label + "'; valid labels: " + join(case_labels(), ", ")) {}

std::string_view to_string(VaporModel m) {
  switch (m) {
    case VaporModel::none: return "none";
    case VaporModel::esh: return "esh";
    case VaporModel::enthalpy: return "enthalpy";
  }
  return "?";
}

VaporModel parse_vapor_model(std::string_view s) {
  if (s == "none") return VaporModel::none;
  if (s == "esh") return VaporModel::esh;
  if (s == "enthalpy") return VaporModel::enthalpy;
  throw ValidationError("run.model", "expected one of none, esh, enthalpy, got '" + std::string(s) + "'");
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void MaterialParams::validate() const {
  require(finite_positive(mu_a_native), "optical.native.mu_a", "must be > 0");
  require(finite_positive(mu_s_native), "optical.native.mu_s", "must be > 0");
  require(g_native >= -1.0 && g_native <= 1.0, "optical.native.g", "must lie in [-1, 1]");
  require(finite_positive(mu_a_coag), "optical.coagulated.mu_a", "must be > 0");
  require(finite_positive(mu_s_coag), "optical.coagulated.mu_s", "must be > 0");
  require(g_coag >= -1.0 && g_coag <= 1.0, "optical.coagulated.g", "must lie in [-1, 1]");
  require(finite_positive(kappa), "thermal.kappa", "must be > 0");
  require(finite_positive(c_p), "thermal.c_p", "must be > 0");
  require(finite_positive(rho), "thermal.rho", "must be > 0");
  require(finite_positive(alpha_cool), "thermal.alpha_cool", "must be > 0");
  require(finite_positive(alpha_amb), "thermal.alpha_amb", "must be > 0");
  require(std::isfinite(xi_b) && xi_b >= 0.0, "thermal.xi_b", "must be >= 0");
  require(finite_positive(T_b), "thermal.T_b", "must be above absolute zero");
  require(finite_positive(A_freq), "damage.A_freq", "must be > 0");
  require(finite_positive(E_a), "damage.E_a", "must be > 0");
  require(finite_positive(R_gas), "damage.R_gas", "must be > 0");
  require(finite_positive(lambda_latent), "vaporization.lambda_latent", "must be > 0");
}

void CaseSpec::validate() const {
  require(t_on >= 0.0, "case.t_on", "must be >= 0");
  require(t_on < t_off, "case.t_off", "must exceed t_on");
  require(t_off <= t_end, "case.t_end", "must be >= t_off");
  require(d_r > 0.0, "case.d_r", "must be > 0");
  require(q_hat >= 0.0, "case.q_hat", "must be >= 0");
}

void Geometry::validate() const {
  require(finite_positive(domain_radius), "geometry.domain_radius", "must be > 0");
  require(finite_positive(domain_height), "geometry.domain_height", "must be > 0");
  require(finite_positive(applicator_radius), "geometry.applicator_radius", "must be > 0");
  require(finite_positive(diffuser_length), "geometry.diffuser_length", "must be > 0");
  require(finite_positive(applicator_depth), "geometry.applicator_depth", "must be > 0");
  require(applicator_radius < domain_radius, "geometry.applicator_radius", "must be below domain_radius");
  require(diffuser_length + applicator_depth < domain_height, "geometry.domain_height",
          "must exceed diffuser_length + applicator_depth");
  require(diffuser_length <= applicator_depth, "geometry.diffuser_length",
          "must not exceed applicator_depth");
  require(near_refine >= 1.0, "geometry.near_refine", "must be >= 1");
}

void RunSettings::validate() const {
  require(beta_q >= 0.0 && beta_q < 1.0, "run.beta_q", "must lie in [0, 1)");
  require(finite_positive(T_init), "run.T_init", "must be above absolute zero");
  require(finite_positive(T_amb), "run.T_amb", "must be above absolute zero");
  require(finite_positive(T_cool), "run.T_cool", "must be above absolute zero");
  require(T_cond_low < T_cond_high, "vaporization.T_cond_low", "must be below T_cond_high");
  require(T_cond_high < kBoilingPointK, "vaporization.T_cond_high", "must be below 100 C");
  require(finite_positive(dt), "run.dt", "must be > 0");
  require(finite_positive(mesh_h), "geometry.mesh_h", "must be > 0");
  require(finite_positive(cg_rtol), "run.cg_rtol", "must be > 0");
  require(cg_max_iter >= 0, "run.cg_max_iter", "must be >= 0");
  require(snapshot_every >= 0, "run.snapshot_every", "must be >= 0");
  require(radiation_every >= 1, "run.radiation_every", "must be >= 1");
  require(finite_positive(esh_tol), "run.esh_tol", "must be > 0");
  require(esh_max_sweeps >= 1, "run.esh_max_sweeps", "must be >= 1");
  geometry.validate();
}

CaseSpec CaseOverride::apply(CaseSpec base) const {
  if (q_hat) base.q_hat = *q_hat;
  if (flow_rate) base.flow_rate = *flow_rate;
  if (t_on) base.t_on = *t_on;
  if (t_off) base.t_off = *t_off;
  if (t_end) base.t_end = *t_end;
  if (d_r) base.d_r = *d_r;
  if (d_z) base.d_z = *d_z;
  return base;
}

bool CaseOverride::empty() const { return *this == CaseOverride{}; }

// ---------------------------------------------------------------------------
// Key table

namespace {

enum class Unit { si, celsius, millimetre };

using Slot = std::variant<double*, std::optional<double>*, int*, bool*, std::string*, VaporModel*>;

struct Key {
  std::string name;
  Unit unit;
  Slot slot;
};

std::vector<Key> key_table(Config& c) {
  auto& m = c.material;
  auto& r = c.run;
  auto& g = c.run.geometry;
  auto& o = c.case_override;
  return {
      {"optical.native.mu_a", Unit::si, &m.mu_a_native},
      {"optical.native.mu_s", Unit::si, &m.mu_s_native},
      {"optical.native.g", Unit::si, &m.g_native},
      {"optical.coagulated.mu_a", Unit::si, &m.mu_a_coag},
      {"optical.coagulated.mu_s", Unit::si, &m.mu_s_coag},
      {"optical.coagulated.g", Unit::si, &m.g_coag},
      {"thermal.kappa", Unit::si, &m.kappa},
      {"thermal.c_p", Unit::si, &m.c_p},
      {"thermal.rho", Unit::si, &m.rho},
      {"thermal.alpha_cool", Unit::si, &m.alpha_cool},
      {"thermal.alpha_amb", Unit::si, &m.alpha_amb},
      {"thermal.xi_b", Unit::si, &m.xi_b},
      {"thermal.T_b", Unit::celsius, &m.T_b},
      {"damage.A_freq", Unit::si, &m.A_freq},
      {"damage.E_a", Unit::si, &m.E_a},
      {"damage.R_gas", Unit::si, &m.R_gas},
      {"vaporization.lambda_latent", Unit::si, &m.lambda_latent},
      {"vaporization.T_cond_low", Unit::celsius, &r.T_cond_low},
      {"vaporization.T_cond_high", Unit::celsius, &r.T_cond_high},
      {"run.model", Unit::si, &r.model},
      {"run.beta_q", Unit::si, &r.beta_q},
      {"run.T_init", Unit::celsius, &r.T_init},
      {"run.T_amb", Unit::celsius, &r.T_amb},
      {"run.T_cool", Unit::celsius, &r.T_cool},
      {"run.dt", Unit::si, &r.dt},
      {"run.cg_rtol", Unit::si, &r.cg_rtol},
      {"run.cg_max_iter", Unit::si, &r.cg_max_iter},
      {"run.output_dir", Unit::si, &r.output_dir},
      {"run.snapshot_every", Unit::si, &r.snapshot_every},
      {"run.radiation_every", Unit::si, &r.radiation_every},
      {"run.esh_tol", Unit::si, &r.esh_tol},
      {"run.esh_max_sweeps", Unit::si, &r.esh_max_sweeps},
      {"run.esh_single_sweep", Unit::si, &r.esh_single_sweep},
      {"geometry.mesh_h", Unit::millimetre, &r.mesh_h},
      {"geometry.domain_radius", Unit::millimetre, &g.domain_radius},
      {"geometry.domain_height", Unit::millimetre, &g.domain_height},
      {"geometry.applicator_radius", Unit::millimetre, &g.applicator_radius},
      {"geometry.diffuser_length", Unit::millimetre, &g.diffuser_length},
      {"geometry.applicator_depth", Unit::millimetre, &g.applicator_depth},
      {"geometry.near_refine", Unit::si, &g.near_refine},
      {"case.q_hat", Unit::si, &o.q_hat},
      {"case.flow_rate", Unit::si, &o.flow_rate},
      {"case.t_on", Unit::si, &o.t_on},
      {"case.t_off", Unit::si, &o.t_off},
      {"case.t_end", Unit::si, &o.t_end},
      {"case.d_r", Unit::millimetre, &o.d_r},
      {"case.d_z", Unit::millimetre, &o.d_z},
  };
}

double from_file_units(double v, Unit u) {
  switch (u) {
    case Unit::celsius: return to_kelvin(v);
    case Unit::millimetre: return v * 1e-3;
    case Unit::si: break;
  }
  return v;
}

double to_file_units(double v, Unit u) {
  switch (u) {
    case Unit::celsius: return to_celsius(v);
    case Unit::millimetre: return v * 1e3;
    case Unit::si: break;
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s, const std::string& key, int line) {
  double v = 0.0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("value of '" + key + "' is not a number: '" + std::string(s) + "'", line);
  return v;
}

// A number optionally followed by a unit: "m" or "mm" for lengths, "K" or
// "C" for temperatures. Without a unit the key's file unit applies.
double parse_quantity(std::string_view s, Unit u, const std::string& key, int line) {
  const auto space = s.find_last_of(" \t");
  if (space == std::string_view::npos) return from_file_units(parse_double(s, key, line), u);
  const auto number = trim(s.substr(0, space));
  const auto unit = s.substr(space + 1);
  const double v = parse_double(number, key, line);
  if (u == Unit::millimetre && unit == "mm") return from_file_units(v, u);
  if (u == Unit::millimetre && unit == "m") return v;
  if (u == Unit::celsius && unit == "C") return from_file_units(v, u);
  if (u == Unit::celsius && unit == "K") return v;
  throw ConfigError("unit '" + std::string(unit) + "' not accepted for '" + key + "'", line);
}

std::string format_double(double v, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

// Shortest decimal in file units that maps back to exactly `si`.
std::string format_exact(double si, Unit u) {
  const double shown = to_file_units(si, u);
  for (int p = 15; p <= 17; ++p) {
    const std::string s = format_double(shown, p);
    if (from_file_units(std::stod(s), u) == si) return s;
  }
  double lo = shown, hi = shown;
  for (int k = 0; k < 64; ++k) {
    lo = std::nextafter(lo, -INFINITY);
    hi = std::nextafter(hi, INFINITY);
    if (from_file_units(lo, u) == si) return format_double(lo, 17);
    if (from_file_units(hi, u) == si) return format_double(hi, 17);
  }
  // No exact value exists in file units; write SI with an explicit unit.
  return format_double(si, 17) + (u == Unit::celsius ? " K" : " m");
}

}  // namespace

Config parse_config(std::string_view text) {
  Config cfg;
  auto table = key_table(cfg);
  std::map<std::string, int> seen;
  std::string section;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    // Strip comments outside of quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (!quoted && (raw[i] == '#' || raw[i] == ';')) {
        raw = raw.substr(0, i);
        break;
      }
    }
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const auto key = std::string(trim(line.substr(0, eq)));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);

    const std::string full = section.empty() ? key : section + "." + key;
    auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == full; });
    if (it == table.end()) throw ConfigError("unknown key '" + full + "'", line_no);
    if (auto [s, inserted] = seen.emplace(full, line_no); !inserted)
      throw ConfigError("duplicate key '" + full + "' (first set on line " + std::to_string(s->second) + ")",
                        line_no);

    const bool is_string = value.size() >= 2 && value.front() == '"' && value.back() == '"';
    if (is_string) value = value.substr(1, value.size() - 2);

    std::visit(
        [&](auto* slot) {
          using T = std::remove_pointer_t<decltype(slot)>;
          if constexpr (std::is_same_v<T, double> || std::is_same_v<T, std::optional<double>>) {
            *slot = parse_quantity(value, it->unit, full, line_no);
          } else if constexpr (std::is_same_v<T, int>) {
            const double v = parse_double(value, full, line_no);
            if (v != std::floor(v) || std::abs(v) > 1e9)
              throw ConfigError("value of '" + full + "' must be an integer", line_no);
            *slot = static_cast<int>(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            if (value == "true") *slot = true;
            else if (value == "false") *slot = false;
            else throw ConfigError("value of '" + full + "' must be true or false", line_no);
          } else if constexpr (std::is_same_v<T, std::string>) {
            *slot = std::string(value);
          } else {
            try {
              *slot = parse_vapor_model(value);
            } catch (const ValidationError& e) {
              throw ConfigError(e.what(), line_no);
            }
          }
        },
        it->slot);
  }

  // Ambient temperature follows the initial temperature unless given.
  if (!seen.count("run.T_amb")) cfg.run.T_amb = cfg.run.T_init;

  cfg.material.validate();
  cfg.run.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string write_config(const Config& cfg) {
  Config copy = cfg;
  const auto table = key_table(copy);
  std::ostringstream out;
  std::string section;
  for (const auto& k : table) {
    const auto dot = k.name.rfind('.');
    const auto sec = k.name.substr(0, dot);
    const auto key = k.name.substr(dot + 1);
    std::string value;
    std::visit(
        [&](auto* slot) {
          using T = std::remove_pointer_t<decltype(slot)>;
          if constexpr (std::is_same_v<T, double>) {
            value = format_exact(*slot, k.unit);
          } else if constexpr (std::is_same_v<T, std::optional<double>>) {
            if (*slot) value = format_exact(**slot, k.unit);
          } else if constexpr (std::is_same_v<T, int>) {
            value = std::to_string(*slot);
          } else if constexpr (std::is_same_v<T, bool>) {
            value = *slot ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::string>) {
            value = "\"" + *slot + "\"";
          } else {
            value = std::string(to_string(*slot));
          }
        },
        k.slot);
    if (value.empty()) continue;
    if (sec != section) {
      out << (section.empty() ? "" : "\n") << "[" << sec << "]\n";
      section = sec;
    }
    out << key << " = " << value << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Built-in cases

const std::vector<CaseSpec>& builtin_cases() {
  static const std::vector<CaseSpec> cases = {
      {"P22F47", 22.1, 47.2, 24, 1266, 1284, 10.1e-3, 12.6e-3},
      {"P22F70", 22.1, 69.9, 30, 1236, 1248, 11.4e-3, 25.7e-3},
      {"P22F92", 22.1, 91.7, 36, 684, 702, 9.2e-3, 20.9e-3},
      {"P28F47", 28.0, 47.5, 18, 942, 954, 13.5e-3, 21.0e-3},
      {"P28F70", 28.0, 70.3, 30, 1722, 1734, 13.7e-3, 7.5e-3},
      {"P28F92", 28.0, 91.8, 60, 1098, 1116, 11.1e-3, 10.1e-3},
      {"P34F47", 33.8, 47.2, 18, 1206, 1218, 11.2e-3, 23.8e-3},
      {"P34F70", 33.8, 70.4, 24, 948, 972, 9.9e-3, 26.3e-3},
      {"P34F92", 33.8, 92.2, 48, 1182, 1206, 9.6e-3, 35.3e-3},
  };
  return cases;
}

const CaseSpec& find_case(std::string_view label) {
  const auto& cases = builtin_cases();
  const auto it = std::find_if(cases.begin(), cases.end(), [&](const CaseSpec& c) { return c.label == label; });
  if (it == cases.end()) throw CaseNotFound(std::string(label));
  return *it;
}

std::vector<std::string> case_labels() {
  std::vector<std::string> out;
  for (const auto& c : builtin_cases()) out.push_back(c.label);
  return out;
}

}  // namespace litt
