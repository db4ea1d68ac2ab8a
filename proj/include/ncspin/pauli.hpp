#pragma once

// Operator realization of the expanded brackets on two-component spinors.
// Operators are WeylElements with hbar and 1/c symbolic; m, e and the
// background fields enter numerically.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ncspin/model.hpp"
#include "ncspin/weyl.hpp"

namespace ncspin {

struct SpinorOperators {
  std::array<WeylElement, 3> X;   // noncommutative position
  std::array<WeylElement, 3> P;   // kinetic momentum p - (e/c) A(x)
  std::array<std::array<WeylElement, 3>, 3> Sij;
  std::array<WeylElement, 3> S;   // spin vector hbar sigma / 2
  std::array<WeylElement, 3> Si0;
};

/// A^mu of a polynomial background as operators in the canonical x.
std::array<WeylElement, 4> potential_operators(const FieldBackground& field);

/// Throws InvalidArgument for backgrounds whose potential is not polynomial.
SpinorOperators build_operators(const Model& model);

/// Smallest power of 1/c among terms with |coefficient| > tol; empty if none.
std::optional<int> leading_cinv(const WeylElement& w, double tol = 1e-12);
std::optional<int> trailing_cinv(const WeylElement& w, double tol = 1e-12);

struct CorrespondenceRow {
  std::string pair;               // xx, xP, xS, PP, PS, SS
  int required = 0;               // residual must start at 1/c^required or beyond
  std::optional<int> leading;     // empty when the residual vanishes
  std::optional<int> highest;
  double max_residual = 0.0;
  bool exact() const { return !leading.has_value(); }
  bool passed() const { return exact() || *leading >= required; }
};

struct CorrespondenceReport {
  std::string background;
  std::vector<CorrespondenceRow> rows;
  bool hermitian = false;
  bool passed() const;
};

/// [A, B] - i hbar {A, B}_expanded with operators substituted, for every
/// component of every pair.
CorrespondenceReport verify_correspondence(const Model& model, double tol = 1e-12);

/// Self-adjointness of all operator families under the formal adjoint.
bool operators_hermitian(const SpinorOperators& ops, double tol = 1e-12);

// --- potential shift and assembled Hamiltonian --------------------------------

/// e A^0(X) - e A^0(x) for a polynomial background (exact).
WeylElement potential_shift(const Model& model);
/// -(e / 2m^2c^2) S.(P x E) with the product symmetrized as (P^j E^k + E^k P^j)/2.
WeylElement potential_shift_formula(const Model& model);

/// Spin-orbit pieces in a Coulomb field A^0 = q/r, as coefficients of
/// L.S / (c^2 r^3).
struct CoulombSpinOrbit {
  double shift = 0.0;          // from the position shift, e q / 2m^2
  double spin_term = 0.0;      // from the spin Hamiltonian, -e g q / 2m^2
  double total = 0.0;          // -e (g - 1) q / 2m^2
  double ordering_correction = 0.0;  // O(hbar) remainder of symmetrizing P x E(x)
};
CoulombSpinOrbit coulomb_spin_orbit(const Particle& particle, double q);

/// Expanded Hamiltonian with the operators substituted, truncated at 1/c^2.
/// Without the shift A^0 is evaluated at the canonical x.
WeylElement assembled_hamiltonian(const Model& model, bool with_position_shift = true);

/// Pauli-type Hamiltonian with spin-orbit coefficient e * so_factor / 2m^2c^2
/// (so_factor = g - 1 for the shifted theory, g for the naive one).
WeylElement reference_hamiltonian(const Model& model, double so_factor);

/// Coefficient kappa in kappa / c^2 * S.(P x E), read from the p3 sigma^2 term of
/// `h` for E = (E0, 0, 0).
double spin_orbit_coefficient(const WeylElement& h, double E0);

struct SpinOrbitIdentity {
  double shifted = 0.0;     // from the assembled Hamiltonian
  double unshifted = 0.0;   // commuting-position quantization
  double expected = 0.0;    // e (g - 1) / 2m^2
  double ratio = 0.0;       // shifted / unshifted
  double expected_ratio = 0.0;
  double hamiltonian_mismatch = 0.0;  // max |assembled - reference(g - 1)|
  bool passed(double tol = 1e-12) const;
};

/// Assembles the Hamiltonian in a uniform field E = (E0, 0, 0) and compares
/// the spin-orbit coefficient with and without the position shift.
SpinOrbitIdentity spin_orbit_identity(const Particle& particle, double E0 = 0.7);

}  // namespace ncspin
