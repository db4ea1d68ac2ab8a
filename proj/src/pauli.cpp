#include "ncspin/pauli.hpp"

#include <algorithm>
#include <cmath>

#include "ncspin/errors.hpp"

namespace ncspin {

namespace {

double levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i - j) * (j - k) * (k - i)) / 2 > 0 ? 1.0 : -1.0;
}

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

const complex kI(0.0, 1.0);

/// i hbar * w
WeylElement i_hbar(const WeylElement& w) { return (kI * w).scaled(1, 0); }

/// A^mu(x) = a0[mu] + sum_j a1[mu][j] x_j, exact for the polynomial backgrounds.
struct LinearPotential {
  std::array<double, 4> a0{};
  std::array<std::array<double, 3>, 4> a1{};
};

LinearPotential linear_potential(const FieldBackground& field) {
  if (!field.is_polynomial())
    throw InvalidArgument("operator realization needs a polynomial background potential");
  LinearPotential out;
  const FourVector origin;
  const FourVector A0 = field.potential(origin);
  for (int mu = 0; mu < 4; ++mu) out.a0[mu] = A0[mu];
  for (int j = 0; j < 3; ++j) {
    Vec3 unit{};
    unit[j] = 1.0;
    const FourVector Aj = field.potential(FourVector::from_parts(0.0, unit));
    for (int mu = 0; mu < 4; ++mu) out.a1[mu][j] = Aj[mu] - A0[mu];
  }
  return out;
}

WeylElement linear_operator(double a0, const std::array<double, 3>& a1,
                            const std::array<WeylElement, 3>& xs) {
  WeylElement out = WeylElement::scalar(a0);
  for (int j = 0; j < 3; ++j)
    if (a1[j] != 0.0) out += a1[j] * xs[j];
  return out;
}

std::array<WeylElement, 3> canonical_positions() {
  return {WeylElement::x(1), WeylElement::x(2), WeylElement::x(3)};
}

std::pair<Vec3, Vec3> uniform_fields(const FieldBackground& field) {
  return extract_EB(field.field(FourVector{}));
}

/// sum_i S_i (P x E)_i with (P^j E^k + E^k P^j) / 2.
WeylElement spin_dot_p_cross_e(const SpinorOperators& ops, const Vec3& E) {
  WeylElement out;
  for (int i = 0; i < 3; ++i) {
    WeylElement cross;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double eps = levi(i, j, k);
        if (eps == 0.0 || E[k] == 0.0) continue;
        const WeylElement Ek = WeylElement::scalar(E[k]);
        cross += (0.5 * eps) * (ops.P[j] * Ek + Ek * ops.P[j]);
      }
    out += ops.S[i] * cross;
  }
  return out;
}

WeylElement kinetic_part(const Model& model, const SpinorOperators& ops) {
  const Particle& pt = model.particle;
  WeylElement p2;
  for (int i = 0; i < 3; ++i) p2 += ops.P[i] * ops.P[i];
  WeylElement h = WeylElement::scalar(pt.m, 0, -2);
  h += (1.0 / (2.0 * pt.m)) * p2;
  h -= ((1.0 / (8.0 * pt.m * pt.m * pt.m)) * (p2 * p2)).scaled(0, 2);
  return h;
}

WeylElement zeeman_part(const Model& model, const SpinorOperators& ops) {
  const Particle& pt = model.particle;
  const Vec3 B = uniform_fields(model.field).second;
  WeylElement out;
  for (int i = 0; i < 3; ++i)
    if (B[i] != 0.0) out += B[i] * ops.S[i];
  return (-(pt.e * pt.g / (2.0 * pt.m)) * out).scaled(0, 1);
}

}  // namespace

std::array<WeylElement, 4> potential_operators(const FieldBackground& field) {
  const LinearPotential lin = linear_potential(field);
  const auto xs = canonical_positions();
  std::array<WeylElement, 4> out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = linear_operator(lin.a0[mu], lin.a1[mu], xs);
  return out;
}

SpinorOperators build_operators(const Model& model) {
  const Particle& pt = model.particle;
  const auto A = potential_operators(model.field);
  SpinorOperators ops;
  for (int i = 0; i < 3; ++i)
    ops.P[i] = WeylElement::p(i + 1) - (pt.e * A[i + 1]).scaled(0, 1);
  for (int i = 0; i < 3; ++i) {
    WeylElement eps_p_sigma;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double eps = levi(i, j, k);
        if (eps != 0.0) eps_p_sigma += eps * (ops.P[j] * WeylElement::sigma(k + 1));
      }
    ops.X[i] = WeylElement::x(i + 1) -
               ((1.0 / (4.0 * pt.m * pt.m)) * eps_p_sigma).scaled(1, 2);
    ops.Si0[i] = ((1.0 / pt.m) * eps_p_sigma).scaled(1, 1);
    ops.S[i] = (0.5 * WeylElement::sigma(i + 1)).scaled(1, 0);
    for (int j = 0; j < 3; ++j) {
      WeylElement sij;
      for (int k = 0; k < 3; ++k) {
        const double eps = levi(i, j, k);
        if (eps != 0.0) sij += eps * WeylElement::sigma(k + 1);
      }
      ops.Sij[i][j] = sij.scaled(1, 0);
    }
  }
  return ops;
}

std::optional<int> leading_cinv(const WeylElement& w, double tol) {
  std::optional<int> out;
  for (const auto& [mono, coef] : w.terms())
    if (coef.max_abs() > tol) out = out ? std::min(*out, mono.cinv) : mono.cinv;
  return out;
}

std::optional<int> trailing_cinv(const WeylElement& w, double tol) {
  std::optional<int> out;
  for (const auto& [mono, coef] : w.terms())
    if (coef.max_abs() > tol) out = out ? std::max(*out, mono.cinv) : mono.cinv;
  return out;
}

bool CorrespondenceReport::passed() const {
  return hermitian &&
         std::all_of(rows.begin(), rows.end(), [](const CorrespondenceRow& r) { return r.passed(); });
}

CorrespondenceReport verify_correspondence(const Model& model, double tol) {
  const Particle& pt = model.particle;
  const SpinorOperators ops = build_operators(model);
  const Vec3 B = uniform_fields(model.field).second;

  CorrespondenceReport report;
  report.background = std::string(to_string(model.field.kind()));
  const auto add_row = [&](const std::string& name, int required,
                           const std::vector<WeylElement>& residuals) {
    CorrespondenceRow row;
    row.pair = name;
    row.required = required;
    for (const auto& r : residuals) {
      if (const auto lo = leading_cinv(r, tol)) row.leading = row.leading ? std::min(*row.leading, *lo) : *lo;
      if (const auto hi = trailing_cinv(r, tol)) row.highest = row.highest ? std::max(*row.highest, *hi) : *hi;
      row.max_residual = std::max(row.max_residual, r.max_abs());
    }
    report.rows.push_back(row);
  };

  std::vector<WeylElement> xx, xP, xS, PP, PS, SS;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      xP.push_back(commutator(ops.X[i], ops.P[j]) - i_hbar(WeylElement::scalar(delta(i, j))));
      if (j <= i) continue;
      xx.push_back(commutator(ops.X[i], ops.X[j]) -
                   i_hbar((1.0 / (2.0 * pt.m * pt.m)) * ops.Sij[i][j]).scaled(0, 2));
      double Fij = 0.0;
      for (int k = 0; k < 3; ++k) Fij += levi(i, j, k) * B[k];
      PP.push_back(commutator(ops.P[i], ops.P[j]) -
                   i_hbar(WeylElement::scalar(pt.e * Fij)).scaled(0, 1));
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        xS.push_back(commutator(ops.X[i], ops.Sij[j][k]));
        PS.push_back(commutator(ops.P[i], ops.Sij[j][k]));
      }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const WeylElement classical =
              2.0 * (delta(i, a) * ops.Sij[j][b] - delta(i, b) * ops.Sij[j][a] -
                     delta(j, a) * ops.Sij[i][b] + delta(j, b) * ops.Sij[i][a]);
          SS.push_back(commutator(ops.Sij[i][j], ops.Sij[a][b]) - i_hbar(classical));
        }

  add_row("xx", 3, xx);
  add_row("xP", 3, xP);
  add_row("xS", 2, xS);
  add_row("PP", 4, PP);
  add_row("PS", 3, PS);
  add_row("SS", 2, SS);
  report.hermitian = operators_hermitian(ops, tol);
  return report;
}

bool operators_hermitian(const SpinorOperators& ops, double tol) {
  const auto herm = [tol](const WeylElement& w) { return (w.adjoint() - w).max_abs() <= tol; };
  for (int i = 0; i < 3; ++i) {
    if (!herm(ops.X[i]) || !herm(ops.P[i]) || !herm(ops.S[i]) || !herm(ops.Si0[i])) return false;
    for (int j = 0; j < 3; ++j)
      if (!herm(ops.Sij[i][j])) return false;
  }
  return true;
}

WeylElement potential_shift(const Model& model) {
  const Particle& pt = model.particle;
  const LinearPotential lin = linear_potential(model.field);
  const SpinorOperators ops = build_operators(model);
  WeylElement out;
  for (int j = 0; j < 3; ++j)
    if (lin.a1[0][j] != 0.0) out += (pt.e * lin.a1[0][j]) * (ops.X[j] - WeylElement::x(j + 1));
  return out;
}

WeylElement potential_shift_formula(const Model& model) {
  const Particle& pt = model.particle;
  const SpinorOperators ops = build_operators(model);
  const Vec3 E = uniform_fields(model.field).first;
  return (-(pt.e / (2.0 * pt.m * pt.m)) * spin_dot_p_cross_e(ops, E)).scaled(0, 2);
}

CoulombSpinOrbit coulomb_spin_orbit(const Particle& particle, double q) {
  // P x E = (q / r^3) p x x = -(q / r^3) L; the symmetrized product adds
  // hbar curl(x / r^3) = 0.
  CoulombSpinOrbit out;
  const double m2 = particle.m * particle.m;
  out.shift = particle.e * q / (2.0 * m2);
  out.spin_term = -particle.e * particle.g * q / (2.0 * m2);
  out.total = out.shift + out.spin_term;
  out.ordering_correction = 0.0;
  return out;
}

WeylElement assembled_hamiltonian(const Model& model, bool with_position_shift) {
  const Particle& pt = model.particle;
  const SpinorOperators ops = build_operators(model);
  const LinearPotential lin = linear_potential(model.field);
  const Vec3 E = uniform_fields(model.field).first;

  WeylElement h = kinetic_part(model, ops);
  const std::array<WeylElement, 3> xs =
      with_position_shift ? ops.X : canonical_positions();
  h += pt.e * linear_operator(lin.a0[0], lin.a1[0], xs);
  h += ((pt.e * pt.g / (2.0 * pt.m * pt.m)) * spin_dot_p_cross_e(ops, E)).scaled(0, 2);
  h += zeeman_part(model, ops);
  return h.truncated(2);
}

WeylElement reference_hamiltonian(const Model& model, double so_factor) {
  const Particle& pt = model.particle;
  const SpinorOperators ops = build_operators(model);
  const LinearPotential lin = linear_potential(model.field);
  const Vec3 E = uniform_fields(model.field).first;

  WeylElement h = kinetic_part(model, ops);
  h += pt.e * linear_operator(lin.a0[0], lin.a1[0], canonical_positions());
  h += ((pt.e * so_factor / (2.0 * pt.m * pt.m)) * spin_dot_p_cross_e(ops, E)).scaled(0, 2);
  h += zeeman_part(model, ops);
  return h.truncated(2);
}

double spin_orbit_coefficient(const WeylElement& h, double E0) {
  if (E0 == 0.0) throw InvalidArgument("spin-orbit extraction needs a non-zero field");
  Monomial mono;
  mono.p[2] = 1;
  mono.hbar = 1;
  mono.cinv = 2;
  return 2.0 * h.coefficient(mono).pauli_component(2).real() / E0;
}

bool SpinOrbitIdentity::passed(double tol) const {
  const double scale = std::max(1.0, std::abs(expected));
  if (!(std::abs(shifted - expected) <= tol * scale)) return false;
  if (!(hamiltonian_mismatch <= tol * scale)) return false;
  if (unshifted != 0.0 && !(std::abs(ratio - expected_ratio) <= tol)) return false;
  return true;
}

SpinOrbitIdentity spin_orbit_identity(const Particle& particle, double E0) {
  BackgroundParams params;
  params.E = {E0, 0.0, 0.0};
  const Model model{particle, make_background(BackgroundKind::uniform_e, params)};
  SpinOrbitIdentity out;
  const WeylElement shifted = assembled_hamiltonian(model, true);
  out.shifted = spin_orbit_coefficient(shifted, E0);
  out.unshifted = spin_orbit_coefficient(assembled_hamiltonian(model, false), E0);
  out.expected = particle.e * (particle.g - 1.0) / (2.0 * particle.m * particle.m);
  out.ratio = out.unshifted != 0.0 ? out.shifted / out.unshifted : 0.0;
  out.expected_ratio = particle.g != 0.0 ? (particle.g - 1.0) / particle.g : 0.0;
  out.hamiltonian_mismatch = (shifted - reference_hamiltonian(model, particle.g - 1.0)).max_abs();
  return out;
}

}  // namespace ncspin
