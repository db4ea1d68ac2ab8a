#pragma once

// Text serialization: shortest round-trip number formatting, flat 16-number
// state records (CSV and JSON) and trajectory tables.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ncspin/dynamics.hpp"

namespace ncspin {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);
/// Strict parse of a whole token; throws InvalidArgument on junk.
double parse_double(std::string_view text);

/// Column names of the flat state record in coordinate order.
std::vector<std::string> state_header();
std::string state_to_csv(const PhaseState& z);
PhaseState state_from_csv(std::string_view line, bool spinless = false);
std::string state_to_json(const PhaseState& z);
PhaseState state_from_json(std::string_view text);

/// Trajectory table: t, x1..x3, P1..P3, S1..S3, D1..D3, T2, T3, T4, T5, H.
std::vector<std::string> trajectory_header();
std::vector<double> trajectory_row(const TrajectorySample& sample);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// {"columns": [...], "rows": [[...], ...], "steps": n, "rejected": n}
void write_trajectory_json(std::ostream& os, const Trajectory& traj);

}  // namespace ncspin
