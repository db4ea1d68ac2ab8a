#include <doctest.h>

#include <cmath>
#include <random>

#include "ncspin/pauli.hpp"
#include "ncspin/verify.hpp"
#include "ncspin/weyl.hpp"

using namespace ncspin;

namespace {

const complex I{0.0, 1.0};

WeylElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> e(0, 2);
  WeylElement out;
  for (int t = 0; t < 4; ++t) {
    Monomial m;
    for (int i = 0; i < 3; ++i) {
      m.x[i] = e(rng);
      m.p[i] = e(rng);
    }
    m.hbar = e(rng) % 2;
    m.cinv = e(rng);
    Mat2 c;
    for (auto& z : c.m) z = {u(rng), u(rng)};
    out += WeylElement::monomial(m, c);
  }
  return out;
}

WeylElement scalar_polynomial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> e(0, 2);
  WeylElement out;
  for (int t = 0; t < 4; ++t) {
    Monomial m;
    for (int i = 0; i < 3; ++i) {
      m.x[i] = e(rng);
      m.p[i] = e(rng);
    }
    out += WeylElement::monomial(m, complex(u(rng)) * Mat2::identity());
  }
  return out;
}

bool model_has_no_b(BackgroundKind kind) {
  return kind == BackgroundKind::zero || kind == BackgroundKind::uniform_e;
}

}  // namespace

TEST_CASE("Pauli matrices") {
  const Mat2 s1 = Mat2::pauli(1), s2 = Mat2::pauli(2), s3 = Mat2::pauli(3);
  CHECK((s1 * s2 - I * s3).max_abs() < 1e-15);
  CHECK((s2 * s3 - I * s1).max_abs() < 1e-15);
  CHECK((s1 * s1 - Mat2::identity()).max_abs() < 1e-15);
  CHECK(std::abs(s3.pauli_component(3) - 1.0) < 1e-15);
  CHECK(s2.dagger() == s2);
}

TEST_CASE("canonical commutation relations") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const WeylElement c = commutator(WeylElement::x(i), WeylElement::p(j));
      const WeylElement expected = i == j ? WeylElement::scalar(I, 1) : WeylElement{};
      CHECK((c - expected).is_zero(1e-15));
      CHECK(commutator(WeylElement::x(i), WeylElement::x(j)).is_zero());
      CHECK(commutator(WeylElement::p(i), WeylElement::p(j)).is_zero());
    }
  const WeylElement pxx = WeylElement::p(1) * WeylElement::x(1) * WeylElement::x(1);
  const WeylElement expected = WeylElement::x(1) * WeylElement::x(1) * WeylElement::p(1) -
                               WeylElement::scalar(2.0 * I, 1) * WeylElement::x(1);
  CHECK((pxx - expected).is_zero(1e-15));
}

TEST_CASE("the operator product is associative") {
  std::mt19937_64 rng(51);
  for (int n = 0; n < 5; ++n) {
    const WeylElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    const WeylElement d = (a * b) * c - a * (b * c);
    CHECK(d.max_abs() < 1e-12 * (1.0 + ((a * b) * c).max_abs()));
  }
}

TEST_CASE("the adjoint reverses products") {
  std::mt19937_64 rng(52);
  const WeylElement a = random_element(rng), b = random_element(rng);
  CHECK(((a * b).adjoint() - b.adjoint() * a.adjoint()).max_abs() < 1e-12);
  CHECK((a.adjoint().adjoint() - a).max_abs() < 1e-12);
}

TEST_CASE("commutators reduce to Poisson brackets as hbar goes to zero") {
  std::mt19937_64 rng(53);
  for (int n = 0; n < 5; ++n) {
    const WeylElement f = scalar_polynomial(rng), g = scalar_polynomial(rng);
    const WeylElement lead = commutator(f, g).hbar_part(1);
    const WeylElement classical = WeylElement::scalar(I, 1) * poisson_symbol(f, g);
    CHECK((lead - classical).max_abs() < 1e-12);
  }
}

TEST_CASE("order bookkeeping in 1/c") {
  const WeylElement w = WeylElement::scalar(1.0, 0, 1) + WeylElement::scalar(2.0, 0, 4);
  CHECK(w.min_cinv() == 1);
  CHECK(w.max_cinv() == 4);
  CHECK(w.truncated(2).max_cinv() == 1);
  CHECK(leading_cinv(w) == 1);
  CHECK(trailing_cinv(w) == 4);
  CHECK_FALSE(leading_cinv(WeylElement{}).has_value());
}

TEST_CASE("operator realization of the expanded brackets") {
  for (auto kind : {BackgroundKind::zero, BackgroundKind::uniform_e, BackgroundKind::uniform_b,
                    BackgroundKind::crossed}) {
    CAPTURE(to_string(kind));
    const CorrespondenceReport r = verify_correspondence(catalog_model(kind));
    CHECK(r.passed());
    CHECK(r.hermitian);
    for (const auto& row : r.rows) {
      CAPTURE(row.pair);
      if (row.pair == "SS" || row.pair == "PP") CHECK(row.exact());
      if (row.pair == "xx") {
        CHECK(row.leading == 4);
        if (model_has_no_b(kind)) CHECK(row.highest == 4);
      }
      if (row.pair == "xP" && kind == BackgroundKind::zero) CHECK(row.exact());
    }
  }
}

TEST_CASE("Coulomb operators are rejected") {
  CHECK_THROWS_AS(build_operators(catalog_model(BackgroundKind::coulomb)), InvalidArgument);
}

TEST_CASE("position shift of the potential") {
  for (auto kind : {BackgroundKind::uniform_e, BackgroundKind::crossed}) {
    const Model model = catalog_model(kind);
    CHECK((potential_shift(model) - potential_shift_formula(model)).max_abs() < 1e-14);
  }
  CHECK(potential_shift(catalog_model(BackgroundKind::uniform_b)).is_zero(1e-15));
}

TEST_CASE("spin-orbit coefficient carries g - 1") {
  for (double g : {2.0, 2.5, 1.5}) {
    CAPTURE(g);
    Particle p;
    p.g = g;
    const SpinOrbitIdentity s = spin_orbit_identity(p);
    CHECK(s.passed());
    CHECK(s.shifted == doctest::Approx((g - 1.0) / 2.0).epsilon(1e-14));
    CHECK(s.unshifted == doctest::Approx(g / 2.0).epsilon(1e-14));
    CHECK(s.ratio == doctest::Approx((g - 1.0) / g).epsilon(1e-14));
  }
  const CoulombSpinOrbit so = coulomb_spin_orbit(Particle{}, -1.0);
  CHECK(so.shift == doctest::Approx(-0.5));
  CHECK(so.spin_term == doctest::Approx(1.0));
  CHECK(so.total == doctest::Approx(0.5));
  CHECK(so.ordering_correction == 0.0);
}
