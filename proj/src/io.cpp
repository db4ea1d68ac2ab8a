#include "ncspin/io.hpp"

#include <charconv>
#include <nlohmann/json.hpp>
#include <sstream>

namespace ncspin {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<std::string> state_header() {
  std::vector<std::string> h;
  for (const char* base : {"x", "p", "omega", "pi"})
    for (int mu = 0; mu < 4; ++mu) h.push_back(base + std::to_string(mu));
  return h;
}

std::string state_to_csv(const PhaseState& z) {
  std::string out;
  const auto a = z.to_array();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) out += ',';
    out += format_double(a[k]);
  }
  return out;
}

PhaseState state_from_csv(std::string_view line, bool spinless) {
  std::array<double, kPhaseDim> a{};
  std::size_t k = 0;
  while (true) {
    const auto comma = line.find(',');
    if (k >= kPhaseDim) throw InvalidArgument("state record has more than 16 fields");
    a[k++] = parse_double(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  if (k != kPhaseDim) throw InvalidArgument("state record needs 16 fields, got " + std::to_string(k));
  return PhaseState::from_array(a, spinless);
}

std::string state_to_json(const PhaseState& z) {
  nlohmann::ordered_json j;
  const auto a = z.to_array();
  const auto h = state_header();
  for (std::size_t k = 0; k < a.size(); ++k) j[h[k]] = a[k];
  j["spinless"] = z.spinless;
  return j.dump();
}

PhaseState state_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed state JSON: ") + e.what());
  }
  std::array<double, kPhaseDim> a{};
  const auto h = state_header();
  for (std::size_t k = 0; k < kPhaseDim; ++k) {
    if (!j.contains(h[k]) || !j[h[k]].is_number())
      throw InvalidArgument("state JSON lacks numeric field '" + h[k] + "'");
    a[k] = j[h[k]].get<double>();
  }
  const bool spinless = j.value("spinless", false);
  return PhaseState::from_array(a, spinless);
}

std::vector<std::string> trajectory_header() {
  return {"t",  "x1", "x2", "x3", "P1", "P2", "P3", "S1", "S2", "S3", "D1",
          "D2", "D3", "T2", "T3", "T4", "T5", "H"};
}

std::vector<double> trajectory_row(const TrajectorySample& s) {
  std::vector<double> row{s.t};
  for (const Vec3* v : {&s.x, &s.P, &s.S, &s.D})
    for (double c : *v) row.push_back(c);
  for (double r : {s.residuals.T2, s.residuals.T3, s.residuals.T4, s.residuals.T5, s.H})
    row.push_back(r);
  return row;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto h = trajectory_header();
  for (std::size_t k = 0; k < h.size(); ++k) os << (k ? "," : "") << h[k];
  os << '\n';
  for (const auto& s : traj.samples) {
    const auto row = trajectory_row(s);
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_double(row[k]);
    os << '\n';
  }
}

void write_trajectory_json(std::ostream& os, const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["columns"] = trajectory_header();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& s : traj.samples) rows.push_back(trajectory_row(s));
  j["rows"] = std::move(rows);
  j["steps"] = traj.steps;
  j["rejected"] = traj.rejected;
  os << j.dump(1) << '\n';
}

}  // namespace ncspin
