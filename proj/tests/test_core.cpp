#include <doctest.h>

#include <cmath>
#include <random>

#include "ncspin/backgrounds.hpp"
#include "ncspin/io.hpp"
#include "ncspin/phase_space.hpp"
#include "ncspin/verify.hpp"

using namespace ncspin;

namespace {

Model with_gauge(BackgroundKind kind) {
  BackgroundParams p = catalog_params(kind);
  p.gauge.linear = {0.3, -1.1, 0.7};
  p.gauge.quadratic = {Vec3{0.2, 0.5, -0.1}, Vec3{0.5, -0.4, 0.3}, Vec3{-0.1, 0.3, 0.6}};
  return {Particle{}, make_background(kind, p)};
}

}  // namespace

TEST_CASE("dual numbers carry exact gradients") {
  const Dual x = Dual::variable(2.0, 0);
  const Dual y = Dual::variable(3.0, 5);
  const Dual f = sqrt(x * y) / (x + 1.0);
  const double s = std::sqrt(6.0);
  CHECK(f.v == doctest::Approx(s / 3.0));
  CHECK(f.d[0] == doctest::Approx(3.0 / (2.0 * s) / 3.0 - s / 9.0));
  CHECK(f.d[5] == doctest::Approx(2.0 / (2.0 * s) / 3.0));
  CHECK(f.d[1] == 0.0);
}

TEST_CASE("minkowski metric and spin tensor layout") {
  const FourVector u{2.0, 1.0, 0.5, -1.0};
  CHECK(minkowski_dot(u, u) == doctest::Approx(-4.0 + 1.0 + 0.25 + 1.0));
  const AntisymTensor4 s = AntisymTensor4::from_spin({0.1, 0.2, 0.3}, {1.0, 2.0, 3.0});
  CHECK(s(1, 2) == doctest::Approx(0.6));
  CHECK(s(2, 1) == doctest::Approx(-0.6));
  CHECK(s.spin_vector()[2] == doctest::Approx(0.3));
  CHECK(s.dipole()[1] == doctest::Approx(2.0));
}

TEST_CASE("fields are the derivatives of the potentials") {
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    for (const Model& model : {catalog_model(kind), with_gauge(kind)}) {
      const Vec3 r{1.3, -0.4, 0.9};
      BasicFourVector<Dual> xd(Dual(0.0), Dual::variable(r[0], 1), Dual::variable(r[1], 2),
                               Dual::variable(r[2], 3));
      const auto A = model.field.potential(xd);
      const auto [E, B] = extract_EB(model.field.field(FourVector{0.0, r[0], r[1], r[2]}));
      for (int i = 0; i < 3; ++i) CHECK(-A[0].d[1 + i] == doctest::Approx(E[i]).epsilon(1e-12));
      CHECK(A[3].d[2] - A[2].d[3] == doctest::Approx(B[0]).epsilon(1e-12));
      CHECK(A[1].d[3] - A[3].d[1] == doctest::Approx(B[1]).epsilon(1e-12));
      CHECK(A[2].d[1] - A[1].d[2] == doctest::Approx(B[2]).epsilon(1e-12));
    }
  }
}

TEST_CASE("background parsing and domain") {
  CHECK(parse_background_kind("crossed") == BackgroundKind::crossed);
  CHECK_THROWS_AS(parse_background_kind("bogus"), InvalidArgument);
  const Model m = catalog_model(BackgroundKind::coulomb);
  CHECK_THROWS_AS(m.field.potential(FourVector{}), DomainError);
}

TEST_CASE("observable gradients match central differences") {
  std::mt19937_64 rng(21);
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    const PhaseState z = random_constrained_state(rng, model);
    for (const Observable& o : {obs::hamiltonian(), obs::T3(), obs::spin(1), obs::P0()}) {
      CAPTURE(o.name());
      const Gradient g = o.gradient(z, model);
      const auto a = z.to_array();
      for (std::size_t k = 0; k < kPhaseDim; ++k) {
        const double h = 1e-6 * std::max(1.0, std::abs(a[k]));
        auto up = a, dn = a;
        up[k] += h;
        dn[k] -= h;
        const double fd = (o.value(PhaseState::from_array(up), model) -
                           o.value(PhaseState::from_array(dn), model)) /
                          (2.0 * h);
        CHECK(g[k] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("constrained initial data") {
  const Model model = catalog_model(BackgroundKind::crossed);
  const PhaseState z = init_state({2.0, 1.0, 0.5}, {0.4, -0.7, 1.1}, {0.0, 0.6, 0.8}, model);
  CHECK(constraint_residuals(z, model).max_abs() < 1e-12);
  CHECK_FALSE(z.spinless);

  const Model free{};
  const PhaseState rest = init_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, free);
  CHECK(spin_tensor(rest)(1, 2) == doctest::Approx(2.0 * std::sqrt(0.75)));
  CHECK(spin_vector(rest)[2] == doctest::Approx(std::sqrt(0.75)));

  CHECK_THROWS_AS(init_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, free),
                  InvalidArgument);
  Model spinless = free;
  spinless.particle.alpha = 0.0;
  CHECK(init_state({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, spinless).spinless);
}

TEST_CASE("particle validation") {
  Particle p;
  p.m = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = Particle{};
  p.c = std::nan("");
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("number and state serialization round-trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(parse_double(format_double(v)) == v);
  CHECK_THROWS_AS(parse_double("1.0x"), InvalidArgument);
  std::mt19937_64 rng(3);
  const Model model = catalog_model(BackgroundKind::uniform_e);
  const PhaseState z = random_constrained_state(rng, model);
  CHECK(state_from_csv(state_to_csv(z)).to_array() == z.to_array());
  CHECK(state_from_json(state_to_json(z)).to_array() == z.to_array());
}
