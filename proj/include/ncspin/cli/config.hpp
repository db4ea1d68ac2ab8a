#pragma once

// Experiment configuration read from nested YAML.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspin/dynamics.hpp"
#include "ncspin/errors.hpp"
#include "ncspin/expansion.hpp"
#include "ncspin/hydrogen.hpp"

namespace ncspin::cli {

enum class ExperimentKind { simulate, brackets, expand, spectrum };
enum class OutputFormat { csv, json };
enum class Units { natural, physical };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(OutputFormat format);
std::string_view to_string(Units units);
ExperimentKind parse_experiment_kind(std::string_view name);
OutputFormat parse_output_format(std::string_view name);
Units parse_units(std::string_view name);

/// Malformed configuration; `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct SimulationSpec {
  Vec3 x{};
  Vec3 P{};
  Vec3 spin_dir{0.0, 0.0, 1.0};
  IntegratorConfig integrator{};
  double t_end = 1.0;
  /// t_end taken as one analytic cyclotron period (spinless, uniform B).
  bool t_end_period = false;
  double max_energy_drift = 1e-6;
  double max_constraint = 1e-8;
};

struct BracketSpec {
  std::size_t states = 50;
};

struct ExpandSpec {
  std::vector<double> ladder = default_ladder();
  StateFamily family{};
};

struct SpectrumSpec {
  Units units = Units::natural;
  int n_max = 4;
  double alpha_fs = 1.0 / 137.035999;
  SpinOrbitCoupling coupling = SpinOrbitCoupling::shifted;
  double max_deviation = 1e-10;
};

struct ExperimentConfig {
  std::optional<ExperimentKind> kind;
  std::uint64_t seed = 0;
  Particle particle{};
  BackgroundKind background = BackgroundKind::zero;
  BackgroundParams field{};
  SimulationSpec simulate{};
  BracketSpec brackets{};
  ExpandSpec expand{};
  SpectrumSpec spectrum{};
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::csv;
  bool plotdata = true;

  Model model() const;
  /// Hydrogen parameters implied by the particle and spectrum sections.
  HydrogenParams hydrogen() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace ncspin::cli
