#pragma once

// The 16-dimensional canonical phase space (x^mu, p^mu, omega^mu, pi^mu) of
// the vector model, observables carrying exact gradients, the canonical
// Poisson bracket, the constraints, and constrained initial data.
//
// Coordinate order everywhere (gradients, flat records, dual seeds):
//   0..3 x^mu, 4..7 p^mu, 8..11 omega^mu, 12..15 pi^mu   (upper indices).

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "ncspin/dual.hpp"
#include "ncspin/errors.hpp"
#include "ncspin/minkowski.hpp"
#include "ncspin/model.hpp"

namespace ncspin {

using Gradient = std::array<double, kPhaseDim>;

template <class T>
struct BasicPhaseState {
  BasicFourVector<T> x;
  BasicFourVector<T> p;
  BasicFourVector<T> omega;
  BasicFourVector<T> pi;
};

using DualState = BasicPhaseState<Dual>;

struct PhaseState : BasicPhaseState<double> {
  /// Spinless sector (alpha = 0): omega = pi = 0 and the spin constraints are
  /// not imposed. The bracket reduces to the canonical one.
  bool spinless = false;

  std::array<double, kPhaseDim> to_array() const;
  static PhaseState from_array(const std::array<double, kPhaseDim>& a, bool spinless = false);
  bool is_finite() const;
};

/// Seeds every coordinate as an independent dual variable.
DualState seed_dual(const PhaseState& z);

// --- kinematics (templated so that duals give exact gradients) -------------

template <class T>
BasicAntisymTensor<T> spin_tensor(const BasicPhaseState<T>& z) {
  BasicAntisymTensor<T> S;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = mu + 1; nu < 4; ++nu)
      S.set(mu, nu, T(2.0) * (z.omega[mu] * z.pi[nu] - z.omega[nu] * z.pi[mu]));
  return S;
}

/// Spatial kinetic momentum P^i = p^i - (e/c) A^i(x).
template <class T>
Vec3T<T> kinetic_spatial(const BasicPhaseState<T>& z, const Model& model) {
  const BasicFourVector<T> A = model.field.potential(z.x);
  const double k = model.particle.e / model.particle.c;
  return {z.p[1] - k * A[1], z.p[2] - k * A[2], z.p[3] - k * A[3]};
}

/// Radicand of P^0: P_i^2 - (e g / 4c) F_{mu nu} S^{mu nu} + m^2 c^2.
template <class T>
T kinetic_radicand(const BasicPhaseState<T>& z, const Model& model) {
  const Particle& pt = model.particle;
  const Vec3T<T> P = kinetic_spatial(z, model);
  const T fs = contract_FS(model.field.field(z.x), spin_tensor(z));
  return dot3(P, P) - (pt.e * pt.g / (4.0 * pt.c)) * fs + pt.m * pt.m * pt.c * pt.c;
}

/// Kinetic four-momentum; the time component is the constraint-resolved
/// function sqrt(P_i^2 - (eg/4c)(FS) + m^2c^2), not p^0 - (e/c)A^0.
template <class T>
BasicFourVector<T> kinetic_momentum(const BasicPhaseState<T>& z, const Model& model) {
  using std::sqrt;
  const T rad = kinetic_radicand(z, model);
  if (!(value_of(rad) > 0.0))
    throw DomainError("negative radicand under P^0: field too strong for the model at this state");
  return BasicFourVector<T>::from_parts(sqrt(rad), kinetic_spatial(z, model));
}

/// T3 = P_mu omega^mu, T4 = P_mu pi^mu with P^0 the function above.
template <class T>
T constraint_T3(const BasicPhaseState<T>& z, const Model& model) {
  return minkowski_dot(kinetic_momentum(z, model), z.omega);
}

template <class T>
T constraint_T4(const BasicPhaseState<T>& z, const Model& model) {
  return minkowski_dot(kinetic_momentum(z, model), z.pi);
}

/// H_cov = c P^0 + e A^0.
template <class T>
T covariant_hamiltonian(const BasicPhaseState<T>& z, const Model& model) {
  const Particle& pt = model.particle;
  return pt.c * kinetic_momentum(z, model)[0] + pt.e * model.field.potential(z.x)[0];
}

// --- observables ----------------------------------------------------------

class Observable {
 public:
  using Fn = std::function<Dual(const DualState&, const Model&)>;

  Observable(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  Dual evaluate(const PhaseState& z, const Model& model) const;
  double value(const PhaseState& z, const Model& model) const { return evaluate(z, model).v; }
  Gradient gradient(const PhaseState& z, const Model& model) const { return evaluate(z, model).d; }

 private:
  std::string name_;
  Fn fn_;
};

namespace obs {
Observable x(std::size_t mu);
Observable p(std::size_t mu);
Observable omega(std::size_t mu);
Observable pi(std::size_t mu);
/// Spatial kinetic momentum P^i, i = 1..3.
Observable P(std::size_t i);
Observable P0();
Observable S(std::size_t mu, std::size_t nu);
/// Frenkel spin vector S_k, k = 1..3.
Observable spin(std::size_t k);
Observable T2();
Observable T3();
Observable T4();
Observable T5();
Observable hamiltonian();
}  // namespace obs

// --- brackets and constraints ---------------------------------------------

/// Canonical bracket with {x^mu, p_nu} = {omega^mu, pi_nu} = delta^mu_nu.
double poisson_bracket(const Gradient& a, const Gradient& b);
double poisson_bracket(const Observable& a, const Observable& b, const PhaseState& z,
                       const Model& model);

/// Kinetic four-momentum of a state (P^0 from the radicand formula).
FourVector calP(const PhaseState& z, const Model& model);

struct ConstraintResiduals {
  double T2 = 0.0;
  double T3 = 0.0;
  double T4 = 0.0;
  double T5 = 0.0;
  std::array<double, 4> ssc{};  // S^{mu nu} P_nu
  double spin2 = 0.0;           // S^{mu nu} S_{mu nu} - 8 alpha

  double max_abs() const;
};

ConstraintResiduals constraint_residuals(const PhaseState& z, const Model& model);

/// Constrained initial data: the spin is built in the rest frame of P with
/// omega = (0, e1), pi = (0, sqrt(alpha) e2), e1 x e2 = spin_dir, then boosted
/// onto P^mu. The residual scale freedom is fixed by omega^2 = 1. With
/// alpha = 0 the spinless state is returned.
PhaseState init_state(const Vec3& x, const Vec3& P_spatial, const Vec3& spin_dir,
                      const Model& model);

PhaseState spinless_state(const Vec3& x, const Vec3& P_spatial, const Model& model);

/// Frenkel spin vector and electric dipole D^i = S^{i0} of a state.
Vec3 spin_vector(const PhaseState& z);
Vec3 dipole_vector(const PhaseState& z);

}  // namespace ncspin
