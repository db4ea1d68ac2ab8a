#include "ncspin/phase_space.hpp"

#include <algorithm>
#include <cmath>

namespace ncspin {

void Particle::validate() const {
  for (double v : {m, e, c, g, hbar, alpha})
    if (!std::isfinite(v)) throw InvalidArgument("particle parameters must be finite");
  if (!(m > 0.0)) throw InvalidArgument("particle mass must be positive");
  if (!(c > 0.0)) throw InvalidArgument("speed of light must be positive");
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (alpha < 0.0) throw InvalidArgument("alpha must be non-negative");
}

std::array<double, kPhaseDim> PhaseState::to_array() const {
  std::array<double, kPhaseDim> a{};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    a[mu] = x[mu];
    a[4 + mu] = p[mu];
    a[8 + mu] = omega[mu];
    a[12 + mu] = pi[mu];
  }
  return a;
}

PhaseState PhaseState::from_array(const std::array<double, kPhaseDim>& a, bool spinless) {
  PhaseState z;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    z.x[mu] = a[mu];
    z.p[mu] = a[4 + mu];
    z.omega[mu] = a[8 + mu];
    z.pi[mu] = a[12 + mu];
  }
  z.spinless = spinless;
  return z;
}

bool PhaseState::is_finite() const {
  const auto a = to_array();
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

DualState seed_dual(const PhaseState& z) {
  DualState d;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    d.x[mu] = Dual::variable(z.x[mu], mu);
    d.p[mu] = Dual::variable(z.p[mu], 4 + mu);
    d.omega[mu] = Dual::variable(z.omega[mu], 8 + mu);
    d.pi[mu] = Dual::variable(z.pi[mu], 12 + mu);
  }
  return d;
}

Dual Observable::evaluate(const PhaseState& z, const Model& model) const {
  return fn_(seed_dual(z), model);
}

namespace obs {

namespace {
std::string idx(std::size_t mu) { return std::to_string(mu); }

void check_index(std::size_t mu, std::size_t lo, std::size_t hi) {
  if (mu < lo || mu > hi) throw InvalidArgument("observable index out of range");
}
}  // namespace

Observable x(std::size_t mu) {
  check_index(mu, 0, 3);
  return {"x" + idx(mu), [mu](const DualState& z, const Model&) { return z.x[mu]; }};
}

Observable p(std::size_t mu) {
  check_index(mu, 0, 3);
  return {"p" + idx(mu), [mu](const DualState& z, const Model&) { return z.p[mu]; }};
}

Observable omega(std::size_t mu) {
  check_index(mu, 0, 3);
  return {"omega" + idx(mu), [mu](const DualState& z, const Model&) { return z.omega[mu]; }};
}

Observable pi(std::size_t mu) {
  check_index(mu, 0, 3);
  return {"pi" + idx(mu), [mu](const DualState& z, const Model&) { return z.pi[mu]; }};
}

Observable P(std::size_t i) {
  check_index(i, 1, 3);
  return {"P" + idx(i),
          [i](const DualState& z, const Model& m) { return kinetic_spatial(z, m)[i - 1]; }};
}

Observable P0() {
  return {"P0", [](const DualState& z, const Model& m) { return kinetic_momentum(z, m)[0]; }};
}

Observable S(std::size_t mu, std::size_t nu) {
  check_index(mu, 0, 3);
  check_index(nu, 0, 3);
  return {"S" + idx(mu) + idx(nu), [mu, nu](const DualState& z, const Model&) {
            return 2.0 * (z.omega[mu] * z.pi[nu] - z.omega[nu] * z.pi[mu]);
          }};
}

Observable spin(std::size_t k) {
  check_index(k, 1, 3);
  return {"Svec" + idx(k),
          [k](const DualState& z, const Model&) { return spin_tensor(z).spin_vector()[k - 1]; }};
}

Observable T2() {
  return {"T2",
          [](const DualState& z, const Model&) { return minkowski_dot(z.omega, z.pi); }};
}

Observable T3() {
  return {"T3", [](const DualState& z, const Model& m) { return constraint_T3(z, m); }};
}

Observable T4() {
  return {"T4", [](const DualState& z, const Model& m) { return constraint_T4(z, m); }};
}

Observable T5() {
  return {"T5", [](const DualState& z, const Model& m) {
            return minkowski_dot(z.pi, z.pi) - m.particle.alpha / minkowski_dot(z.omega, z.omega);
          }};
}

Observable hamiltonian() {
  return {"H", [](const DualState& z, const Model& m) { return covariant_hamiltonian(z, m); }};
}

}  // namespace obs

double poisson_bracket(const Gradient& a, const Gradient& b) {
  double sum = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const double s = eta(mu);
    sum += s * (a[mu] * b[4 + mu] - a[4 + mu] * b[mu]);
    sum += s * (a[8 + mu] * b[12 + mu] - a[12 + mu] * b[8 + mu]);
  }
  return sum;
}

double poisson_bracket(const Observable& a, const Observable& b, const PhaseState& z,
                       const Model& model) {
  const Gradient ga = a.gradient(z, model);
  const Gradient gb = b.gradient(z, model);
  for (std::size_t k = 0; k < kPhaseDim; ++k)
    if (!std::isfinite(ga[k]) || !std::isfinite(gb[k]))
      throw DomainError("non-finite gradient in Poisson bracket");
  return poisson_bracket(ga, gb);
}

FourVector calP(const PhaseState& z, const Model& model) { return kinetic_momentum(z, model); }

double ConstraintResiduals::max_abs() const {
  double m = std::max({std::abs(T2), std::abs(T3), std::abs(T4), std::abs(T5), std::abs(spin2)});
  for (double v : ssc) m = std::max(m, std::abs(v));
  return m;
}

ConstraintResiduals constraint_residuals(const PhaseState& z, const Model& model) {
  ConstraintResiduals r;
  if (z.spinless) return r;
  const double w2 = minkowski_dot(z.omega, z.omega);
  if (w2 == 0.0) throw DomainError("omega^2 = 0: T5 is singular");
  const FourVector P = calP(z, model);
  const AntisymTensor4 S = spin_tensor(z);
  r.T2 = minkowski_dot(z.omega, z.pi);
  r.T3 = minkowski_dot(P, z.omega);
  r.T4 = minkowski_dot(P, z.pi);
  r.T5 = minkowski_dot(z.pi, z.pi) - model.particle.alpha / w2;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    double acc = 0.0;
    for (std::size_t nu = 0; nu < 4; ++nu) acc += S(mu, nu) * P.lower(nu);
    r.ssc[mu] = acc;
  }
  r.spin2 = contract_FS(S, S) - 8.0 * model.particle.alpha;
  return r;
}

namespace {

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(dot3(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

/// Pure boost taking (M,0,0,0) to P, applied to a rest-frame spatial vector.
FourVector boost_spatial(const Vec3& w, const FourVector& P) {
  const double P0 = P[0];
  const Vec3 Ps = P.spatial();
  const double M = std::sqrt(P0 * P0 - dot3(Ps, Ps));
  const double pw = dot3(Ps, w);
  const double k = pw / (M * (P0 + M));
  return {pw / M, w[0] + k * Ps[0], w[1] + k * Ps[1], w[2] + k * Ps[2]};
}

}  // namespace

PhaseState spinless_state(const Vec3& x, const Vec3& P_spatial, const Model& model) {
  const Particle& pt = model.particle;
  PhaseState z;
  z.spinless = true;
  z.x = FourVector(0.0, x[0], x[1], x[2]);
  const FourVector A = model.field.potential(z.x);
  const double k = pt.e / pt.c;
  const double P0 = std::sqrt(dot3(P_spatial, P_spatial) + pt.m * pt.m * pt.c * pt.c);
  z.p = FourVector(P0 + k * A[0], P_spatial[0] + k * A[1], P_spatial[1] + k * A[2],
                   P_spatial[2] + k * A[3]);
  return z;
}

PhaseState init_state(const Vec3& x, const Vec3& P_spatial, const Vec3& spin_dir,
                      const Model& model) {
  const Particle& pt = model.particle;
  pt.validate();
  if (pt.alpha == 0.0) return spinless_state(x, P_spatial, model);

  const double norm = std::sqrt(dot3(spin_dir, spin_dir));
  if (!(std::abs(norm - 1.0) < 1e-9)) throw InvalidArgument("spin_dir must be a unit vector");
  const Vec3 n = normalized(spin_dir);

  // e1: the coordinate axis least aligned with n, orthogonalised against n.
  std::size_t axis = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(n[k]) < std::abs(n[axis])) axis = k;
  Vec3 a{};
  a[axis] = 1.0;
  const double an = dot3(a, n);
  const Vec3 e1 = normalized({a[0] - an * n[0], a[1] - an * n[1], a[2] - an * n[2]});
  const Vec3 e2 = cross3(n, e1);
  const double b = std::sqrt(pt.alpha);
  const Vec3 w_rest = e1;
  const Vec3 p_rest{b * e2[0], b * e2[1], b * e2[2]};

  PhaseState z;
  z.x = FourVector(0.0, x[0], x[1], x[2]);
  const FourVector A = model.field.potential(z.x);
  const double k = pt.e / pt.c;
  for (std::size_t i = 0; i < 3; ++i) z.p[i + 1] = P_spatial[i] + k * A[i + 1];

  // P^0 depends on the boosted spin through (FS); iterate to the fixed point.
  double P0 = std::sqrt(dot3(P_spatial, P_spatial) + pt.m * pt.m * pt.c * pt.c);
  for (int iter = 0; iter < 200; ++iter) {
    const FourVector P = FourVector::from_parts(P0, P_spatial);
    if (!(P0 * P0 - dot3(P_spatial, P_spatial) > 0.0))
      throw DomainError("infeasible radicand while building initial data");
    z.omega = boost_spatial(w_rest, P);
    z.pi = boost_spatial(p_rest, P);
    const double rad = kinetic_radicand(z, model);
    if (!(rad > dot3(P_spatial, P_spatial)))
      throw DomainError("infeasible radicand while building initial data");
    const double next = std::sqrt(rad);
    const bool done = std::abs(next - P0) <= 1e-16 * P0;
    P0 = next;
    if (done) break;
  }
  z.omega = boost_spatial(w_rest, FourVector::from_parts(P0, P_spatial));
  z.pi = boost_spatial(p_rest, FourVector::from_parts(P0, P_spatial));
  z.p[0] = P0 + k * A[0];
  return z;
}

Vec3 spin_vector(const PhaseState& z) { return spin_tensor(z).spin_vector(); }

Vec3 dipole_vector(const PhaseState& z) { return spin_tensor(z).dipole(); }

}  // namespace ncspin
