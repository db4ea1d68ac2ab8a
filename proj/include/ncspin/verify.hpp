#pragma once

// Background catalog, seeded random constrained states and the bracket
// verification report.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncspin/brackets.hpp"

namespace ncspin {

/// zero, uniform-e, uniform-b, crossed, coulomb.
std::vector<BackgroundKind> catalog_kinds();

/// Default field strengths: E = (0.3, -0.2, 0.5), B = (0.4, 0.1, -0.6), q = -3.
BackgroundParams catalog_params(BackgroundKind kind);
Model catalog_model(BackgroundKind kind, const Particle& particle = {});

/// x in (2, 1, 0) + [-1, 1]^3, P in [-3, 3]^3, uniformly random spin direction.
PhaseState random_constrained_state(std::mt19937_64& rng, const Model& model);

struct PairDeviation {
  BracketPair pair = BracketPair::xx;
  std::size_t components = 0;
  double adjudicated = 0.0;  // max |closed - direct| / (1 + |direct|)
  double printed = 0.0;      // same for the literal expressions
};

struct BracketReport {
  std::string background;
  std::size_t states = 0;
  std::uint64_t seed = 0;
  double defining_residual = 0.0;  // max |{T_a, X}_D|
  double antisymmetry = 0.0;       // max |{A, B}_D + {B, A}_D|
  std::vector<PairDeviation> pairs;
  std::vector<AuxiliaryEntry> table;  // worst case over the states

  bool defining_ok(double tol = 1e-10) const { return defining_residual < tol; }
  bool closed_ok(double tol = 1e-8) const;
  bool table_resolved() const;
  bool passed() const { return defining_ok() && closed_ok() && table_resolved(); }
};

BracketReport verify_brackets(const Model& model, std::size_t n_states, std::uint64_t seed);

/// Printed versus adjudicated reading of each defective closed-form entry.
struct Adjudication {
  std::string item;
  std::string printed;
  std::string resolved;
};

std::vector<Adjudication> closed_form_adjudications();

struct FreeLimitCheck {
  /// max |{x^i, x^j}_D - S^{ij} / (2 m c P^0)| over states with P = 0
  double quoted_rest_residual = 0.0;
  /// same over moving states: the quoted form holds only at rest
  double quoted_moving_deviation = 0.0;
  /// max |{x^i, x^j}_D - (P^0 S^{ij} + P^i S^{j0} + P^j S^{0i}) / (2 m^2 c^2 P^0)|
  double exact_moving_residual = 0.0;
  double rest_value = 0.0;     // {x^1, x^2}_D at rest with spin along z
  double rest_expected = 0.0;  // sqrt(alpha) / (m^2 c^2)
  bool passed(double tol = 1e-10) const;
};

/// Free theory: random rest-frame and moving states.
FreeLimitCheck free_limit_check(const Particle& particle, std::size_t n_states,
                                std::uint64_t seed);

}  // namespace ncspin
