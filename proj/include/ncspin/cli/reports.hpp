#pragma once

// JSON reports, CSV tables and long-format plot data.

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "ncspin/dynamics.hpp"
#include "ncspin/expansion.hpp"
#include "ncspin/hydrogen.hpp"
#include "ncspin/pauli.hpp"
#include "ncspin/verify.hpp"

namespace ncspin::cli {

using Json = nlohmann::ordered_json;

Json to_json(const BracketReport& report);
Json to_json(const FreeLimitCheck& check);
Json to_json(const std::vector<Adjudication>& items);
Json to_json(const ExpansionReport& report);
Json to_json(const CorrespondenceReport& report);
Json to_json(const SpinOrbitIdentity& identity);
Json to_json(const CoulombSpinOrbit& so);
Json to_json(const HydrogenLevel& level);

void write_json(std::ostream& os, const Json& j);

/// pair, components, adjudicated, printed
void write_brackets_csv(std::ostream& os, const BracketReport& report);
/// row, order, c, residual, scaled
void write_expansion_csv(std::ostream& os, const ExpansionReport& report);
/// n, l, j, kinetic, spin_orbit, total, sommerfeld, deviation
void write_levels_csv(std::ostream& os, const std::vector<HydrogenLevel>& levels);

/// Spectroscopic label such as 2p3/2.
std::string level_label(const HydrogenLevel& level);

struct PlotPoint {
  std::string series;
  double t = 0.0;
  double value = 0.0;
};

/// x1..x3 (and S1..S3 for spinning states) against t.
std::vector<PlotPoint> plot_trajectory(const Trajectory& traj, bool with_spin);
/// residual * c^k of every row against c.
std::vector<PlotPoint> plot_expansion(const ExpansionReport& report);
/// Level diagram: per (n, l, j), t = 0 the Bohr energy, t = 1 with the shift.
std::vector<PlotPoint> plot_spectrum(const std::vector<HydrogenLevel>& levels,
                                     const HydrogenParams& params);

/// series,t,value. Throws InvalidArgument on empty input.
void write_plotdata(std::ostream& os, const std::vector<PlotPoint>& points);

}  // namespace ncspin::cli
