#include "ncspin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ncspin {

double hamiltonian_cov(const PhaseState& z, const Model& model) {
  return covariant_hamiltonian(z, model);
}

namespace {

/// {z_k, b} for every coordinate z_k, given the gradient of b.
Gradient coordinate_brackets(const Gradient& b) {
  Gradient out{};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const double s = eta(mu);
    out[mu] = s * b[4 + mu];
    out[4 + mu] = -s * b[mu];
    out[8 + mu] = s * b[12 + mu];
    out[12 + mu] = -s * b[8 + mu];
  }
  return out;
}

}  // namespace

StateVector eom_rhs(const PhaseState& z, const Model& model) {
  const Particle& pt = model.particle;
  const DualState d = seed_dual(z);
  const BasicFourVector<Dual> P = kinetic_momentum(d, model);
  const Dual H = pt.c * P[0] + pt.e * model.field.potential(d.x)[0];
  StateVector out = coordinate_brackets(H.d);
  if (!z.spinless) {
    const Dual T3 = minkowski_dot(P, d.omega);
    const Dual T4 = minkowski_dot(P, d.pi);
    const double D = poisson_bracket(T3.d, T4.d);
    if (!(std::abs(D) > 1e-12 * std::max(1.0, pt.m * pt.m * pt.c * pt.c)))
      throw DegenerateConstraints("{T3, T4} vanishes along the trajectory");
    const Gradient j3 = coordinate_brackets(T3.d);
    const Gradient j4 = coordinate_brackets(T4.d);
    const double h3 = poisson_bracket(H.d, T3.d);
    const double h4 = poisson_bracket(H.d, T4.d);
    for (std::size_t k = 0; k < kPhaseDim; ++k) out[k] -= (j3[k] * h4 - j4[k] * h3) / D;
  }
  out[0] = pt.c;
  return out;
}

std::string to_string(IntegratorMethod method) {
  return method == IntegratorMethod::rk4 ? "rk4" : "rk45";
}

IntegratorMethod parse_integrator_method(const std::string& name) {
  if (name == "rk4") return IntegratorMethod::rk4;
  if (name == "rk45") return IntegratorMethod::rk45;
  throw InvalidArgument("unknown integrator method '" + name + "' (expected rk4 or rk45)");
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("integrator step must be > 0");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw InvalidArgument("integrator tolerance must be > 0");
  if (max_steps == 0) throw InvalidArgument("max_steps must be positive");
  if (record_every == 0) throw InvalidArgument("record_every must be positive");
}

double Trajectory::max_constraint_residual() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.residuals.max_abs());
  return m;
}

double Trajectory::max_energy_drift() const {
  if (samples.empty()) return 0.0;
  const double h0 = samples.front().H;
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.H - h0));
  return m / std::max(std::abs(h0), 1e-300);
}

TrajectorySample make_sample(double t, const PhaseState& z, const Model& model) {
  TrajectorySample s;
  s.t = t;
  s.z = z;
  s.x = z.x.spatial();
  s.P = calP(z, model).spatial();
  const AntisymTensor4 S = spin_tensor(z);
  s.S = S.spin_vector();
  s.D = S.dipole();
  s.residuals = constraint_residuals(z, model);
  s.H = hamiltonian_cov(z, model);
  return s;
}

PhaseState project_constraints(const PhaseState& z, const Model& model) {
  if (z.spinless) return z;
  const double alpha = model.particle.alpha;
  PhaseState out = z;
  double last_P0 = 0.0;
  for (int iter = 0; iter < 50; ++iter) {
    const double P0 = calP(out, model)[0];
    const Vec3 P = kinetic_spatial(out, model);
    out.omega[0] = dot3(P, out.omega.spatial()) / P0;
    out.pi[0] = dot3(P, out.pi.spatial()) / P0;
    const double w2 = minkowski_dot(out.omega, out.omega);
    if (!(w2 > 0.0)) throw DomainError("omega is not spacelike; cannot project constraints");
    out.pi -= out.omega * (minkowski_dot(out.omega, out.pi) / w2);
    const double p2 = minkowski_dot(out.pi, out.pi);
    if (!(p2 > 0.0)) throw DomainError("pi is not spacelike; cannot project constraints");
    out.pi *= std::sqrt(alpha / (w2 * p2));
    const double s = std::sqrt(w2);
    out.omega *= 1.0 / s;
    out.pi *= s;
    if (std::abs(P0 - last_P0) <= 1e-15 * P0) break;
    last_P0 = P0;
  }
  return out;
}

namespace {

StateVector axpy(const StateVector& y, double h, const StateVector& k) {
  StateVector out;
  for (std::size_t i = 0; i < kPhaseDim; ++i) out[i] = y[i] + h * k[i];
  return out;
}

StateVector rhs(const StateVector& y, bool spinless, const Model& model) {
  return eom_rhs(PhaseState::from_array(y, spinless), model);
}

StateVector rk4_step(const StateVector& y, double h, bool spinless, const Model& model) {
  const StateVector k1 = rhs(y, spinless, model);
  const StateVector k2 = rhs(axpy(y, 0.5 * h, k1), spinless, model);
  const StateVector k3 = rhs(axpy(y, 0.5 * h, k2), spinless, model);
  const StateVector k4 = rhs(axpy(y, h, k3), spinless, model);
  StateVector out;
  for (std::size_t i = 0; i < kPhaseDim; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

/// Dormand-Prince 5(4). Returns the fifth-order solution and the error norm
/// relative to `tol`.
std::pair<StateVector, double> dp45_step(const StateVector& y, double h, double tol,
                                         bool spinless, const Model& model) {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  const auto stage = [&](std::initializer_list<std::pair<double, const StateVector*>> terms) {
    StateVector out = y;
    for (const auto& [c, k] : terms)
      for (std::size_t i = 0; i < kPhaseDim; ++i) out[i] += h * c * (*k)[i];
    return rhs(out, spinless, model);
  };
  const StateVector k1 = rhs(y, spinless, model);
  const StateVector k2 = stage({{a21, &k1}});
  const StateVector k3 = stage({{a31, &k1}, {a32, &k2}});
  const StateVector k4 = stage({{a41, &k1}, {a42, &k2}, {a43, &k3}});
  const StateVector k5 = stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
  const StateVector k6 = stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
  StateVector y5;
  for (std::size_t i = 0; i < kPhaseDim; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  const StateVector k7 = rhs(y5, spinless, model);
  double err = 0.0;
  for (std::size_t i = 0; i < kPhaseDim; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
    const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
    err = std::max(err, std::abs(e) / sc);
  }
  return {y5, err};
}

bool all_finite(const StateVector& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Trajectory integrate(const PhaseState& z0, const Model& model, const IntegratorConfig& cfg,
                     double t_end) {
  cfg.validate();
  model.particle.validate();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be >= 0");
  if (!z0.is_finite()) throw InvalidArgument("initial state is not finite");
  const ConstraintResiduals r0 = constraint_residuals(z0, model);
  const double P0 = calP(z0, model)[0];
  const double scale = std::max({1.0, P0 * (std::sqrt(dot3(z0.omega.spatial(), z0.omega.spatial())) +
                                            std::sqrt(dot3(z0.pi.spatial(), z0.pi.spatial()))),
                                 8.0 * model.particle.alpha});
  if (r0.max_abs() > 1e-8 * scale)
    throw InvalidArgument("initial state violates the constraints (residual " +
                          std::to_string(r0.max_abs()) + ")");

  Trajectory traj;
  const bool spinless = z0.spinless;
  StateVector y = z0.to_array();
  double t = 0.0;
  double h = cfg.step;
  traj.samples.push_back(make_sample(t, z0, model));

  const double t_eps = 1e-12 * std::max(1.0, t_end);
  std::size_t accepted = 0;
  while (t_end - t > t_eps) {
    if (accepted >= cfg.max_steps)
      throw IntegrationError("maximum number of steps exceeded before t_end");
    const double h_try = std::min(h, t_end - t);
    StateVector next;
    if (cfg.method == IntegratorMethod::rk4) {
      next = rk4_step(y, h_try, spinless, model);
    } else {
      const auto [y5, err] = dp45_step(y, h_try, cfg.tolerance, spinless, model);
      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (!(err <= 1.0) || !all_finite(y5)) {
        ++traj.rejected;
        h = h_try * std::min(factor, 0.5);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
          throw IntegrationError("adaptive step size underflow");
        continue;
      }
      next = y5;
      h = h_try * factor;
    }
    if (!all_finite(next)) throw IntegrationError("non-finite state after step at t = " + std::to_string(t));
    t += h_try;
    if (cfg.project) next = project_constraints(PhaseState::from_array(next, spinless), model).to_array();
    y = next;
    ++accepted;
    const bool last = !(t_end - t > t_eps);
    if (accepted % cfg.record_every == 0 || last)
      traj.samples.push_back(make_sample(t, PhaseState::from_array(y, spinless), model));
  }
  traj.steps = accepted;
  return traj;
}

namespace {

struct Plane {
  Vec3 u, v;
};

Plane plane_of(const Vec3& axis) {
  const double n = std::sqrt(dot3(axis, axis));
  if (!(n > 0.0)) throw InvalidArgument("precession axis must be non-zero");
  const Vec3 a{axis[0] / n, axis[1] / n, axis[2] / n};
  Vec3 t{1.0, 0.0, 0.0};
  if (std::abs(a[0]) > 0.9) t = {0.0, 1.0, 0.0};
  const double ta = dot3(t, a);
  Vec3 u{t[0] - ta * a[0], t[1] - ta * a[1], t[2] - ta * a[2]};
  const double un = std::sqrt(dot3(u, u));
  for (auto& c : u) c /= un;
  return {u, cross3(a, u)};
}

struct PhaseFit {
  double slope = 0.0;
  double rms = 0.0;
  double span = 0.0;
  bool ok = false;
};

PhaseFit fit_phase(const std::vector<double>& t, const std::vector<Vec3>& vecs, const Plane& pl) {
  PhaseFit fit;
  const std::size_t n = t.size();
  std::vector<double> phi(n);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = dot3(vecs[k], pl.u);
    const double b = dot3(vecs[k], pl.v);
    const double norm = std::sqrt(dot3(vecs[k], vecs[k]));
    if (!(std::hypot(a, b) > 1e-9 * std::max(norm, 1e-300))) return fit;
    double ph = std::atan2(b, a);
    if (k > 0) {
      while (ph - prev > std::numbers::pi) ph -= 2.0 * std::numbers::pi;
      while (ph - prev < -std::numbers::pi) ph += 2.0 * std::numbers::pi;
    }
    phi[k] = ph;
    prev = ph;
  }
  double mt = 0.0, mp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mt += t[k];
    mp += phi[k];
  }
  mt /= double(n);
  mp /= double(n);
  double stt = 0.0, stp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    stt += (t[k] - mt) * (t[k] - mt);
    stp += (t[k] - mt) * (phi[k] - mp);
  }
  if (!(stt > 0.0)) return fit;
  fit.slope = stp / stt;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = phi[k] - (mp + fit.slope * (t[k] - mt));
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / double(n));
  fit.span = std::abs(phi.back() - phi.front());
  fit.ok = true;
  return fit;
}

}  // namespace

PrecessionDiagnostics precession_diagnostics(const Trajectory& traj, const Model& model,
                                             const Vec3& axis, double min_phase_span) {
  if (traj.samples.size() < 3) throw FitError("trajectory too short for a frequency fit");
  const Plane pl = plane_of(axis);
  const double an = std::sqrt(dot3(axis, axis));
  const Vec3 a{axis[0] / an, axis[1] / an, axis[2] / an};

  std::vector<double> t;
  std::vector<Vec3> S, P;
  for (const auto& s : traj.samples) {
    t.push_back(s.t);
    S.push_back(s.S);
    P.push_back(s.P);
  }
  const PhaseFit spin = fit_phase(t, S, pl);
  if (!spin.ok) throw FitError("spin has no component in the precession plane");
  if (spin.span < min_phase_span)
    throw FitError("spin phase advance too small for a frequency fit (non-periodic data)");
  const PhaseFit orbit = fit_phase(t, P, pl);

  const Particle& pt = model.particle;
  const double kE = pt.e * pt.g / (2.0 * pt.m * pt.m * pt.c * pt.c);
  const double kB = pt.e * pt.g / (2.0 * pt.m * pt.c);
  double naive = 0.0;
  for (const auto& s : traj.samples) {
    const auto [E, B] = extract_EB(model.field.field(s.z.x));
    naive += kE * dot3(cross3(s.P, E), a) - kB * dot3(B, a);
  }
  naive /= double(traj.samples.size());

  PrecessionDiagnostics d;
  d.spin_freq = spin.slope;
  d.orbit_freq = orbit.ok ? orbit.slope : 0.0;
  d.larmor_freq = std::abs(spin.slope);
  d.naive_freq = naive;
  d.thomas_ratio = naive != 0.0 ? spin.slope / naive : 0.0;
  d.phase_rms = spin.rms;
  d.phase_span = spin.span;
  return d;
}

}  // namespace ncspin
