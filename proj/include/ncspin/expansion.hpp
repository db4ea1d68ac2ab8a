#pragma once

// Low-energy expansion in powers of 1/c: the expanded Hamiltonian, the
// leading-order brackets, c-ladder scaling checks, and the map to variables
// with canonical brackets.

#include <string>
#include <vector>

#include "ncspin/brackets.hpp"

namespace ncspin {

/// |P| / mc below which the expansion is trusted.
inline constexpr double kExpansionValidity = 0.3;

bool expansion_valid(const PhaseState& z, const Model& model);

/// mc^2 + P^2/2m - P^4/8m^3c^2 + eA^0.
double hamiltonian_charge(const PhaseState& z, const Model& model);
/// (eg/2mc) [ S.(P x E) / mc - B.S ] with the Frenkel spin vector S.
double hamiltonian_spin(const PhaseState& z, const Model& model);
/// Sum of the two; does not check `expansion_valid`.
double hamiltonian_expanded(const PhaseState& z, const Model& model);

/// Leading-order value of a bracket component. Spin indices must be spatial;
/// Sx and SP stand for {S^{jk}, x^i} and {S^{jk}, P^i}.
double expanded_bracket(const PairIndex& id, const PhaseState& z, const Model& model);

/// Power k such that the stated remainder is o(c^-k).
int remainder_order(BracketPair pair);

/// Components of a family with purely spatial spin indices.
std::vector<PairIndex> expansion_components(BracketPair pair);

/// Physical data kept fixed while c runs along the ladder.
struct StateFamily {
  Vec3 x{1.5, -0.7, 0.4};
  Vec3 velocity{0.5, 0.3, -0.2};
  Vec3 spin_dir{0.0, 0.0, 1.0};
};

/// Constrained state with the family's position, 3-velocity and spin
/// direction for the model's value of c.
PhaseState family_state(const StateFamily& family, const Model& model);

struct LadderPoint {
  double c = 0.0;
  double residual = 0.0;  // max over components of |exact - expanded|
  double scaled = 0.0;    // residual * c^k
};

struct PairScaling {
  std::string name;
  int order = 0;
  std::vector<LadderPoint> points;
  bool exact = false;        // residual vanishes at every ladder point
  bool decreasing = false;   // residual * c^k strictly decreasing
  double fitted_exponent = 0.0;  // slope of log residual vs log c
  bool passed() const { return exact || decreasing; }
};

struct ExpansionReport {
  std::string background;
  std::vector<double> ladder;
  std::vector<PairScaling> rows;
  bool passed() const;
};

std::vector<double> default_ladder();

/// Scaling of every bracket family, the expanded Hamiltonian and the
/// canonical-variable brackets along the ladder.
ExpansionReport scaling_order(const Model& base, const StateFamily& family,
                              const std::vector<double>& ladder = default_ladder());

/// Scaling row for a single family.
PairScaling scaling_order(BracketPair pair, const Model& base, const StateFamily& family,
                          const std::vector<double>& ladder = default_ladder());

// --- canonical variables ------------------------------------------------------

/// Primed variables: x = x' - S'^{ij} P'^j / 4m^2c^2, P = P' - (e/c) A(x'),
/// S' = S. P' is the canonical momentum of the primed pair.
struct CanonicalVariables {
  Vec3 x{};
  Vec3 P{};
  AntisymTensor4 S;
};

CanonicalVariables canonical_map(const PhaseState& z, const Model& model);

/// Physical (x, P) from primed variables.
std::pair<Vec3, Vec3> canonical_map_inverse(const CanonicalVariables& v, const Model& model);

namespace obs {
/// Primed position and momentum components as observables, i = 1..3.
Observable canonical_x(std::size_t i);
Observable canonical_P(std::size_t i);
}  // namespace obs

/// Max deviations of the Dirac brackets of primed variables from canonical
/// values: {x',x'}, {x',P'} - delta, {P',P'}.
struct CanonicalResiduals {
  double xx = 0.0;
  double xP = 0.0;
  double PP = 0.0;
};

CanonicalResiduals canonical_bracket_residuals(const PhaseState& z, const Model& model);

}  // namespace ncspin
