#pragma once

// Dirac bracket for the second-class pair (T3, T4).
//
// Two independent routes are provided:
//  * the direct construction, which assembles every sub-bracket from exact
//    gradients through the canonical Poisson bracket, and
//  * closed-form expressions built from the coefficient blocks
//    u0, a, Delta, K, L and the effective metric g.
// The direct route is the reference; the closed forms are checked against it.

#include <array>
#include <string>
#include <vector>

#include "ncspin/phase_space.hpp"

namespace ncspin {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Precomputed constraint data at one state; brackets of arbitrary gradients
/// are then a handful of dot products.
class DiracStructure {
 public:
  DiracStructure(const PhaseState& z, const Model& model);

  /// {A, B}_D from the gradients of A and B.
  double bracket(const Gradient& a, const Gradient& b) const;
  /// {T3, T4} (zero for the spinless sector, where the bracket is canonical).
  double t3t4() const { return t3t4_; }
  const Gradient& grad_T3() const { return dT3_; }
  const Gradient& grad_T4() const { return dT4_; }

 private:
  bool canonical_ = false;
  Gradient dT3_{};
  Gradient dT4_{};
  double t3t4_ = 0.0;
};

double dirac_bracket_direct(const Observable& a, const Observable& b, const PhaseState& z,
                            const Model& model);

// --- closed forms -----------------------------------------------------------

struct DiracCoefficients {
  double u0 = 0.0;
  double a = 0.0;
  Mat4 Delta{};                 // Delta^{mu nu}
  Mat4 K{};                     // K^{mu nu}
  std::array<Mat4, 4> L{};      // L[mu][nu][alpha]
  Mat4 g_eff{};                 // g^{mu nu}

  // Ingredients, kept for the closed-form brackets and reports.
  FourVector P;                 // kinetic four-momentum
  AntisymTensor4 S;
  AntisymTensor4 F;
  double FS = 0.0;
  Vec3 grad_FS{};               // d_i (F_{mu nu} S^{mu nu}) at fixed S
  Mat4 FS_antisym{};            // (FS)^{[mu nu]} = (FS)^{mu nu} - (FS)^{nu mu}
  /// {T3, T4} = e u0 / (2 c a P^0).
  double t3t4 = 0.0;
};

DiracCoefficients dirac_coefficients(const PhaseState& z, const Model& model);

enum class BracketPair { xx, xP, PP, SS, Sx, SP };

std::string to_string(BracketPair pair);
BracketPair parse_bracket_pair(const std::string& name);

/// One component of a bracket family. Spatial indices run 1..3, spacetime
/// indices 0..3.
struct PairIndex {
  BracketPair pair = BracketPair::xx;
  std::array<std::size_t, 4> idx{};

  static PairIndex xx(std::size_t i, std::size_t j) { return {BracketPair::xx, {i, j, 0, 0}}; }
  static PairIndex xP(std::size_t i, std::size_t j) { return {BracketPair::xP, {i, j, 0, 0}}; }
  static PairIndex PP(std::size_t i, std::size_t j) { return {BracketPair::PP, {i, j, 0, 0}}; }
  static PairIndex SS(std::size_t mu, std::size_t nu, std::size_t al, std::size_t be) {
    return {BracketPair::SS, {mu, nu, al, be}};
  }
  static PairIndex Sx(std::size_t mu, std::size_t nu, std::size_t j) {
    return {BracketPair::Sx, {mu, nu, j, 0}};
  }
  static PairIndex SP(std::size_t mu, std::size_t nu, std::size_t j) {
    return {BracketPair::SP, {mu, nu, j, 0}};
  }

  std::string label() const;
  /// The two observables whose Dirac bracket this component is.
  std::pair<Observable, Observable> observables() const;
};

/// Every independent component of a family.
std::vector<PairIndex> all_components(BracketPair pair);

/// `printed` evaluates the expressions literally (with the undefined symbol v
/// in Delta set to zero); `adjudicated` uses the forms confirmed against the
/// direct construction.
enum class FormulaVariant { printed, adjudicated };

double dirac_bracket_closed(const PairIndex& id, const DiracCoefficients& coeffs,
                            const Model& model,
                            FormulaVariant variant = FormulaVariant::adjudicated);
double dirac_bracket_closed(const PairIndex& id, const PhaseState& z, const Model& model,
                            FormulaVariant variant = FormulaVariant::adjudicated);

// --- auxiliary Poisson brackets ----------------------------------------------

struct AuxiliaryEntry {
  std::string row;      // second argument: x, P, P0, omega, pi, J, or "T3,T4"
  std::string column;   // first argument: P0, T3, T4
  double printed_dev = 0.0;   // max |printed - direct| over components
  double resolved_dev = 0.0;  // max |resolved - direct| over components
  double scale = 0.0;         // max |direct|
  bool printed_ok = false;
  bool resolved_ok = false;
  std::string note;
};

/// The auxiliary brackets {P0, .}, {T3, .}, {T4, .} evaluated from the
/// tabulated expressions and from the canonical bracket. Disagreement is
/// reported, never thrown.
std::vector<AuxiliaryEntry> auxiliary_bracket_table(const PhaseState& z, const Model& model,
                                                    double rel_tol = 1e-9);

}  // namespace ncspin
