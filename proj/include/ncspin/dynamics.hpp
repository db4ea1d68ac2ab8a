#pragma once

// Lab-time evolution dz/dt = {z, H_cov}_D, numerical integration with
// constraint monitoring, and spin-precession diagnostics.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ncspin/phase_space.hpp"

namespace ncspin {

using StateVector = std::array<double, kPhaseDim>;

double hamiltonian_cov(const PhaseState& z, const Model& model);

/// Time derivative of all sixteen coordinates. dx^0/dt = c is imposed; the
/// spinless sector uses the canonical bracket.
StateVector eom_rhs(const PhaseState& z, const Model& model);

enum class IntegratorMethod { rk4, rk45 };

std::string to_string(IntegratorMethod method);
IntegratorMethod parse_integrator_method(const std::string& name);

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::rk4;
  double step = 1e-3;        // fixed step (rk4) or initial step (rk45)
  double tolerance = 1e-10;  // rk45 local error tolerance
  bool project = false;      // re-impose T2..T5 after every step
  std::size_t max_steps = 10'000'000;
  std::size_t record_every = 1;

  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  PhaseState z;
  Vec3 x{};
  Vec3 P{};
  Vec3 S{};
  Vec3 D{};
  ConstraintResiduals residuals;
  double H = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::size_t steps = 0;
  std::size_t rejected = 0;

  double max_constraint_residual() const;
  /// max |H(t) - H(0)| / |H(0)|.
  double max_energy_drift() const;
};

TrajectorySample make_sample(double t, const PhaseState& z, const Model& model);

/// Re-imposes T2, T3, T4, T5 and the spin value, moving only omega^0, pi^0,
/// pi along omega and the omega/pi scales; S^{ij} directions and x, p are
/// untouched.
PhaseState project_constraints(const PhaseState& z, const Model& model);

Trajectory integrate(const PhaseState& z0, const Model& model, const IntegratorConfig& cfg,
                     double t_end);

struct PrecessionDiagnostics {
  double spin_freq = 0.0;    // signed angular velocity of S about the axis
  double orbit_freq = 0.0;   // signed angular velocity of P about the axis
  double larmor_freq = 0.0;  // |spin_freq|
  double naive_freq = 0.0;   // spin frequency predicted by the bare g coupling
  double thomas_ratio = 0.0; // spin_freq / naive_freq
  double phase_rms = 0.0;    // rms residual of the linear phase fit [rad]
  double phase_span = 0.0;   // total unwrapped spin phase [rad]
};

/// Least-squares fit of the unwrapped in-plane phases of S and P about
/// `axis`. The naive prediction is the bare coupling
/// Omega = (eg / 2m^2c^2) P x E - (eg / 2mc) B averaged over the samples.
PrecessionDiagnostics precession_diagnostics(const Trajectory& traj, const Model& model,
                                             const Vec3& axis = {0.0, 0.0, 1.0},
                                             double min_phase_span = 0.05);

}  // namespace ncspin
