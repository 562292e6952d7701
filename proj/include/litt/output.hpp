#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "litt/driver.hpp"

namespace litt {

inline constexpr std::string_view kTimeSeriesHeader =
    "t_s,T_probe_C,T_max_C,Qvap_W,Qcond_discarded_W,H_total_J,omega_probe,cg_iters_heat,cg_iters_rad";
inline constexpr std::string_view kSnapshotHeader = "node,r_m,z_m,T_C,phi_W_m2,omega,H_J_m3";

/// Locale-independent shortest round-trip decimal.
std::string format_number(double v);

void write_time_series_header(std::ostream& out);
void write_time_series_row(std::ostream& out, const StepRecord& rec);
void write_time_series(std::ostream& out, const std::vector<StepRecord>& log);

void write_snapshot(std::ostream& out, const AxiMesh& mesh, const SimState& state);

/// Resolved configuration, case, code version and run diagnostics as JSON.
std::string metadata_json(const Simulation& sim, const std::string& status);

/// Probe temperature per window on the common time grid:
/// `t_s,T_probe_C[lo:hi],...`.
void write_comparison(std::ostream& out, const std::vector<RunResult>& runs);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace litt
