#pragma once

// Config-driven experiments writing reports into the output directory.

#include <string>
#include <vector>

#include "ncspin/cli/config.hpp"

namespace ncspin::cli {

enum ExitCode : int { kExitOk = 0, kExitPhysics = 1, kExitUsage = 2 };

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;     // written, relative to the output directory
  std::vector<std::string> failures;  // failed physics assertions
};

/// Runs `kind` (or the config's kind). Throws ConfigError for configurations
/// that are well-formed but unusable for the requested experiment.
RunResult run_experiment(const ExperimentConfig& cfg, ExperimentKind kind);
RunResult run_experiment(const ExperimentConfig& cfg);

/// Analytic cyclotron data of a spinless state in a uniform magnetic field.
struct CyclotronReference {
  double period = 0.0;   // 2 pi P^0 / |e B|
  double radius = 0.0;   // |P_perp| c / |e B|
  Vec3 center{};         // x + c (P x B) / (e B^2)
};

/// Throws InvalidArgument unless the model is a pure uniform magnetic field
/// and the state is spinless.
CyclotronReference cyclotron_reference(const PhaseState& z0, const Model& model);

struct CyclotronCheck {
  double radius_deviation = 0.0;   // max | |x_perp - center| - r | / r
  double closure = 0.0;            // |x(T) - x(0)| / r
};

CyclotronCheck cyclotron_check(const Trajectory& traj, const CyclotronReference& ref,
                               const Vec3& axis);

}  // namespace ncspin::cli
