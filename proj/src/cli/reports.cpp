#include "ncspin/cli/reports.hpp"

#include <cmath>

#include "ncspin/io.hpp"

namespace ncspin::cli {

namespace {

Json order_or_null(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const BracketReport& report) {
  Json j;
  j["background"] = report.background;
  j["states"] = report.states;
  j["seed"] = report.seed;
  j["defining_residual"] = report.defining_residual;
  j["antisymmetry"] = report.antisymmetry;
  Json pairs = Json::array();
  for (const auto& p : report.pairs)
    pairs.push_back({{"pair", to_string(p.pair)},
                     {"components", p.components},
                     {"adjudicated", p.adjudicated},
                     {"printed", p.printed}});
  j["pairs"] = std::move(pairs);
  Json table = Json::array();
  for (const auto& e : report.table)
    table.push_back({{"row", e.row},
                     {"column", e.column},
                     {"printed_dev", e.printed_dev},
                     {"resolved_dev", e.resolved_dev},
                     {"scale", e.scale},
                     {"printed_ok", e.printed_ok},
                     {"resolved_ok", e.resolved_ok},
                     {"note", e.note}});
  j["table"] = std::move(table);
  j["passed"] = report.passed();
  return j;
}

Json to_json(const FreeLimitCheck& c) {
  return {{"quoted_rest_residual", c.quoted_rest_residual},
          {"quoted_moving_deviation", c.quoted_moving_deviation},
          {"exact_moving_residual", c.exact_moving_residual},
          {"rest_value", c.rest_value},
          {"rest_expected", c.rest_expected},
          {"passed", c.passed()}};
}

Json to_json(const std::vector<Adjudication>& items) {
  Json out = Json::array();
  for (const auto& a : items)
    out.push_back({{"item", a.item}, {"printed", a.printed}, {"resolved", a.resolved}});
  return out;
}

Json to_json(const ExpansionReport& report) {
  Json j;
  j["background"] = report.background;
  j["ladder"] = report.ladder;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json pts = Json::array();
    for (const auto& p : r.points)
      pts.push_back({{"c", p.c}, {"residual", p.residual}, {"scaled", p.scaled}});
    rows.push_back({{"name", r.name},
                    {"order", r.order},
                    {"exact", r.exact},
                    {"decreasing", r.decreasing},
                    {"fitted_exponent", r.fitted_exponent},
                    {"passed", r.passed()},
                    {"points", std::move(pts)}});
  }
  j["rows"] = std::move(rows);
  j["passed"] = report.passed();
  return j;
}

Json to_json(const CorrespondenceReport& report) {
  Json j;
  j["background"] = report.background;
  Json rows = Json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"pair", r.pair},
                    {"required", r.required},
                    {"leading", order_or_null(r.leading)},
                    {"highest", order_or_null(r.highest)},
                    {"exact", r.exact()},
                    {"max_residual", r.max_residual},
                    {"passed", r.passed()}});
  j["rows"] = std::move(rows);
  j["hermitian"] = report.hermitian;
  j["passed"] = report.passed();
  return j;
}

Json to_json(const SpinOrbitIdentity& s) {
  return {{"shifted", s.shifted},
          {"unshifted", s.unshifted},
          {"expected", s.expected},
          {"ratio", s.ratio},
          {"expected_ratio", s.expected_ratio},
          {"hamiltonian_mismatch", s.hamiltonian_mismatch},
          {"passed", s.passed()}};
}

Json to_json(const CoulombSpinOrbit& so) {
  return {{"shift", so.shift},
          {"spin_term", so.spin_term},
          {"total", so.total},
          {"ordering_correction", so.ordering_correction}};
}

Json to_json(const HydrogenLevel& l) {
  return {{"label", level_label(l)},
          {"n", l.n},
          {"l", l.l},
          {"j", l.j},
          {"kinetic", l.kinetic},
          {"spin_orbit", l.spin_orbit},
          {"zeeman", l.zeeman},
          {"total", l.total},
          {"sommerfeld", l.sommerfeld},
          {"deviation", l.deviation},
          {"total_alpha4", l.total_alpha4}};
}

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

void write_brackets_csv(std::ostream& os, const BracketReport& report) {
  os << "pair,components,adjudicated,printed\n";
  for (const auto& p : report.pairs)
    os << to_string(p.pair) << ',' << p.components << ',' << format_double(p.adjudicated) << ','
       << format_double(p.printed) << '\n';
}

void write_expansion_csv(std::ostream& os, const ExpansionReport& report) {
  os << "row,order,c,residual,scaled\n";
  for (const auto& r : report.rows)
    for (const auto& p : r.points)
      os << r.name << ',' << r.order << ',' << format_double(p.c) << ','
         << format_double(p.residual) << ',' << format_double(p.scaled) << '\n';
}

void write_levels_csv(std::ostream& os, const std::vector<HydrogenLevel>& levels) {
  os << "n,l,j,kinetic,spin_orbit,total,sommerfeld,deviation\n";
  for (const auto& l : levels)
    os << l.n << ',' << l.l << ',' << format_double(l.j) << ',' << format_double(l.kinetic) << ','
       << format_double(l.spin_orbit) << ',' << format_double(l.total) << ','
       << format_double(l.sommerfeld) << ',' << format_double(l.deviation) << '\n';
}

std::string level_label(const HydrogenLevel& level) {
  static const char* letters = "spdfghi";
  const int twice_j = static_cast<int>(std::lround(2.0 * level.j));
  return std::to_string(level.n) + letters[level.l] + std::to_string(twice_j) + "/2";
}

std::vector<PlotPoint> plot_trajectory(const Trajectory& traj, bool with_spin) {
  std::vector<PlotPoint> out;
  static const char* xs[3] = {"x1", "x2", "x3"};
  static const char* ss[3] = {"S1", "S2", "S3"};
  for (int k = 0; k < 3; ++k)
    for (const auto& s : traj.samples) out.push_back({xs[k], s.t, s.x[k]});
  if (with_spin)
    for (int k = 0; k < 3; ++k)
      for (const auto& s : traj.samples) out.push_back({ss[k], s.t, s.S[k]});
  return out;
}

std::vector<PlotPoint> plot_expansion(const ExpansionReport& report) {
  std::vector<PlotPoint> out;
  for (const auto& r : report.rows)
    for (const auto& p : r.points)
      out.push_back({r.name + " residual*c^" + std::to_string(r.order), p.c, p.scaled});
  return out;
}

std::vector<PlotPoint> plot_spectrum(const std::vector<HydrogenLevel>& levels,
                                     const HydrogenParams& params) {
  std::vector<PlotPoint> out;
  for (const auto& l : levels) {
    const double bohr = bohr_energy(l.n, params);
    out.push_back({level_label(l), 0.0, bohr});
    out.push_back({level_label(l), 1.0, bohr + l.total});
  }
  return out;
}

void write_plotdata(std::ostream& os, const std::vector<PlotPoint>& points) {
  if (points.empty()) throw InvalidArgument("plot data needs at least one point");
  os << "series,t,value\n";
  for (const auto& p : points)
    os << p.series << ',' << format_double(p.t) << ',' << format_double(p.value) << '\n';
}

}  // namespace ncspin::cli
