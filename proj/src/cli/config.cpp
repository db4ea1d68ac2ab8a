#include "ncspin/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ncspin::cli {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::brackets: return "brackets";
    case ExperimentKind::expand: return "expand";
    case ExperimentKind::spectrum: return "spectrum";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

std::string_view to_string(Units units) {
  return units == Units::natural ? "natural" : "physical";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::simulate, ExperimentKind::brackets, ExperimentKind::expand,
                 ExperimentKind::spectrum})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown experiment kind '" + std::string(name) +
                        "' (simulate | brackets | expand | spectrum)");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw InvalidArgument("unknown output format '" + std::string(name) + "' (csv | json)");
}

Units parse_units(std::string_view name) {
  if (name == "natural") return Units::natural;
  if (name == "physical") return Units::physical;
  throw InvalidArgument("unknown units '" + std::string(name) + "' (natural | physical)");
}

ConfigError::ConfigError(const std::string& field, int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + field + ": " + message
                     : field + ": " + message),
      field_(field),
      line_(line) {}

Model ExperimentConfig::model() const {
  return Model{particle, make_background(background, field)};
}

HydrogenParams ExperimentConfig::hydrogen() const {
  HydrogenParams p = spectrum.units == Units::physical ? HydrogenParams::physical(particle.g)
                                                       : HydrogenParams{};
  if (spectrum.units == Units::natural) {
    p.g = particle.g;
    p.m = particle.m;
    p.c = particle.c;
    p.hbar = particle.hbar;
  }
  p.n_max = spectrum.n_max;
  p.alpha_fs = spectrum.alpha_fs;
  p.coupling = spectrum.coupling;
  return p;
}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

/// A mapping node with a dotted path, rejecting unknown keys.
class Section {
 public:
  Section(YAML::Node node, std::string path, std::set<std::string> allowed)
      : node_(std::move(node)), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_.empty() ? "<root>" : path_, line_of(node_), "expected a mapping");
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) throw ConfigError(field(key), line_of(kv.first), "unknown key");
    }
  }

  bool has(const std::string& key) const { return bool(node_[key]); }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  YAML::Node node(const std::string& key) const { return node_[key]; }

  std::optional<Section> section(const std::string& key, std::set<std::string> allowed) const {
    if (!has(key)) return std::nullopt;
    return Section(node_[key], field(key), std::move(allowed));
  }

  void read(const std::string& key, double& out) const {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    try {
      out = n.as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key), line_of(n), "expected a number");
    }
    if (!std::isfinite(out)) throw ConfigError(field(key), line_of(n), "must be finite");
  }

  void read(const std::string& key, bool& out) const {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    try {
      out = n.as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key), line_of(n), "expected true or false");
    }
  }

  template <class Int>
  void read_count(const std::string& key, Int& out, long long min_value) const {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    long long v = 0;
    try {
      v = n.as<long long>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key), line_of(n), "expected an integer");
    }
    if (v < min_value)
      throw ConfigError(field(key), line_of(n), "must be >= " + std::to_string(min_value));
    out = static_cast<Int>(v);
  }

  void read(const std::string& key, std::string& out) const {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    if (!n.IsScalar()) throw ConfigError(field(key), line_of(n), "expected a string");
    out = n.as<std::string>();
  }

  void read(const std::string& key, Vec3& out) const {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    if (!n.IsSequence() || n.size() != 3)
      throw ConfigError(field(key), line_of(n), "expected a list of three numbers");
    for (std::size_t i = 0; i < 3; ++i) {
      try {
        out[i] = n[i].as<double>();
      } catch (const YAML::Exception&) {
        throw ConfigError(field(key), line_of(n[i]), "expected a number");
      }
      if (!std::isfinite(out[i])) throw ConfigError(field(key), line_of(n[i]), "must be finite");
    }
  }

  void read(const std::string& key, std::vector<double>& out) const {
    if (!has(key)) return;
    const YAML::Node n = node_[key];
    if (!n.IsSequence()) throw ConfigError(field(key), line_of(n), "expected a list of numbers");
    out.clear();
    for (const auto& item : n) {
      try {
        out.push_back(item.as<double>());
      } catch (const YAML::Exception&) {
        throw ConfigError(field(key), line_of(item), "expected a number");
      }
    }
  }

  /// Runs `parse` on a string value, turning InvalidArgument into ConfigError.
  template <class Fn>
  void read_enum(const std::string& key, Fn parse) const {
    if (!has(key)) return;
    std::string text;
    read(key, text);
    try {
      parse(text);
    } catch (const InvalidArgument& e) {
      throw ConfigError(field(key), line_of(node_[key]), e.what());
    }
  }

  int line(const std::string& key) const { return has(key) ? line_of(node_[key]) : line_of(node_); }

 private:
  YAML::Node node_;
  std::string path_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<syntax>", e.mark.line + 1, e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError("<root>", 0, "empty configuration");

  ExperimentConfig cfg;
  const Section top(root, "",
                    {"kind", "seed", "particle", "background", "simulate", "brackets", "expand",
                     "spectrum", "output"});
  top.read_enum("kind", [&](const std::string& s) { cfg.kind = parse_experiment_kind(s); });
  top.read_count("seed", cfg.seed, 0);

  if (auto s = top.section("particle", {"m", "e", "c", "g", "hbar", "alpha"})) {
    Particle& p = cfg.particle;
    s->read("m", p.m);
    s->read("e", p.e);
    s->read("c", p.c);
    s->read("g", p.g);
    s->read("hbar", p.hbar);
    p.alpha = 0.75 * p.hbar * p.hbar;
    s->read("alpha", p.alpha);
    try {
      p.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError("particle", s->line("m"), e.what());
    }
  }

  if (auto s = top.section("background", {"kind", "E", "B", "q", "r_min"})) {
    s->read_enum("kind", [&](const std::string& k) { cfg.background = parse_background_kind(k); });
    s->read("E", cfg.field.E);
    s->read("B", cfg.field.B);
    s->read("q", cfg.field.q);
    s->read("r_min", cfg.field.r_min);
    try {
      (void)make_background(cfg.background, cfg.field);
    } catch (const Error& e) {
      throw ConfigError("background", s->line("kind"), e.what());
    }
  }

  if (auto s = top.section("simulate", {"x", "P", "spin_dir", "method", "step", "tolerance",
                                        "project", "t_end", "record_every", "max_steps",
                                        "max_energy_drift", "max_constraint"})) {
    SimulationSpec& sim = cfg.simulate;
    s->read("x", sim.x);
    s->read("P", sim.P);
    s->read("spin_dir", sim.spin_dir);
    s->read_enum("method", [&](const std::string& m) {
      sim.integrator.method = parse_integrator_method(m);
    });
    s->read("step", sim.integrator.step);
    s->read("tolerance", sim.integrator.tolerance);
    s->read("project", sim.integrator.project);
    s->read_count("record_every", sim.integrator.record_every, 1);
    s->read_count("max_steps", sim.integrator.max_steps, 1);
    if (s->has("t_end")) {
      const YAML::Node n = s->node("t_end");
      if (n.IsScalar() && n.as<std::string>() == "period")
        sim.t_end_period = true;
      else
        s->read("t_end", sim.t_end);
      if (!sim.t_end_period && !(sim.t_end > 0.0))
        throw ConfigError("simulate.t_end", s->line("t_end"), "must be positive or 'period'");
    }
    s->read("max_energy_drift", sim.max_energy_drift);
    s->read("max_constraint", sim.max_constraint);
    if (!(sim.max_energy_drift > 0.0))
      throw ConfigError("simulate.max_energy_drift", s->line("max_energy_drift"), "must be positive");
    if (!(sim.max_constraint > 0.0))
      throw ConfigError("simulate.max_constraint", s->line("max_constraint"), "must be positive");
    try {
      sim.integrator.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError("simulate", s->line("step"), e.what());
    }
  }

  if (auto s = top.section("brackets", {"states"})) s->read_count("states", cfg.brackets.states, 1);

  if (auto s = top.section("expand", {"ladder", "x", "velocity", "spin_dir"})) {
    s->read("ladder", cfg.expand.ladder);
    s->read("x", cfg.expand.family.x);
    s->read("velocity", cfg.expand.family.velocity);
    s->read("spin_dir", cfg.expand.family.spin_dir);
    const auto& l = cfg.expand.ladder;
    for (std::size_t k = 0; k < l.size(); ++k)
      if (!(l[k] > 0.0) || (k > 0 && !(l[k] > l[k - 1])))
        throw ConfigError("expand.ladder", s->line("ladder"), "must be positive and increasing");
    if (l.size() < 2) throw ConfigError("expand.ladder", s->line("ladder"), "needs at least two values");
  }

  if (auto s = top.section("spectrum",
                           {"units", "n_max", "alpha_fs", "coupling", "max_deviation"})) {
    SpectrumSpec& sp = cfg.spectrum;
    s->read_enum("units", [&](const std::string& u) { sp.units = parse_units(u); });
    s->read_count("n_max", sp.n_max, 2);
    if (sp.n_max > 6) throw ConfigError("spectrum.n_max", s->line("n_max"), "must be <= 6");
    s->read("alpha_fs", sp.alpha_fs);
    if (!(sp.alpha_fs > 0.0)) throw ConfigError("spectrum.alpha_fs", s->line("alpha_fs"), "must be positive");
    s->read_enum("coupling", [&](const std::string& c) { sp.coupling = parse_spin_orbit_coupling(c); });
    s->read("max_deviation", sp.max_deviation);
    if (!(sp.max_deviation > 0.0))
      throw ConfigError("spectrum.max_deviation", s->line("max_deviation"), "must be positive");
  }

  if (auto s = top.section("output", {"dir", "format", "plotdata"})) {
    s->read("dir", cfg.out_dir);
    s->read_enum("format", [&](const std::string& f) { cfg.format = parse_output_format(f); });
    s->read("plotdata", cfg.plotdata);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", 0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ncspin::cli
