#include <doctest.h>

#include <cmath>
#include <random>

#include "ncspin/brackets.hpp"
#include "ncspin/verify.hpp"

using namespace ncspin;

TEST_CASE("Dirac bracket annihilates the second-class constraints") {
  std::mt19937_64 rng(101);
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    for (int n = 0; n < 5; ++n) {
      const PhaseState z = random_constrained_state(rng, model);
      for (const Observable& X : {obs::x(1), obs::P(2), obs::S(1, 2), obs::S(0, 3), obs::hamiltonian()}) {
        CHECK(std::abs(dirac_bracket_direct(obs::T3(), X, z, model)) < 1e-10);
        CHECK(std::abs(dirac_bracket_direct(obs::T4(), X, z, model)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Dirac bracket is antisymmetric") {
  std::mt19937_64 rng(102);
  const Model model = catalog_model(BackgroundKind::crossed);
  const PhaseState z = random_constrained_state(rng, model);
  const Observable a = obs::x(2), b = obs::S(1, 3);
  CHECK(dirac_bracket_direct(a, b, z, model) ==
        doctest::Approx(-dirac_bracket_direct(b, a, z, model)).epsilon(1e-14));
}

TEST_CASE("closed forms agree with the direct construction") {
  std::mt19937_64 rng(103);
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    const PhaseState z = random_constrained_state(rng, model);
    for (auto pair : {BracketPair::xx, BracketPair::xP, BracketPair::PP, BracketPair::SS,
                      BracketPair::Sx, BracketPair::SP})
      for (const auto& id : all_components(pair)) {
        CAPTURE(id.label());
        const auto [a, b] = id.observables();
        const double direct = dirac_bracket_direct(a, b, z, model);
        const double closed = dirac_bracket_closed(id, z, model);
        CHECK(std::abs(closed - direct) <= 1e-8 * (1.0 + std::abs(direct)));
      }
  }
}

TEST_CASE("spinless sector has the canonical bracket") {
  Model model;
  model.particle.alpha = 0.0;
  const PhaseState z = init_state({1.0, 2.0, 3.0}, {0.5, 0.1, -0.2}, {0.0, 0.0, 1.0}, model);
  CHECK(dirac_bracket_direct(obs::x(1), obs::x(2), z, model) == 0.0);
  CHECK(dirac_bracket_direct(obs::x(1), obs::p(1), z, model) == doctest::Approx(1.0));
}

TEST_CASE("bracket report over the catalog") {
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const BracketReport r = verify_brackets(catalog_model(kind), 8, 7);
    CHECK(r.passed());
    CHECK(r.antisymmetry < 1e-12);
    CHECK(r.pairs.size() == 6);
  }
}

TEST_CASE("printed table defects are reproduced and resolved") {
  const BracketReport r = verify_brackets(catalog_model(BackgroundKind::crossed), 4, 9);
  bool any_printed_defect = false;
  for (const auto& e : r.table) {
    CAPTURE(e.row);
    CAPTURE(e.column);
    CHECK(e.resolved_ok);
    any_printed_defect |= !e.printed_ok;
  }
  CHECK(any_printed_defect);
  CHECK(closed_form_adjudications().size() == 7);
}

TEST_CASE("free theory position bracket") {
  const FreeLimitCheck f = free_limit_check(Particle{}, 20, 5);
  CHECK(f.passed());
  CHECK(f.rest_value == doctest::Approx(std::sqrt(3.0) / 200.0).epsilon(1e-14));
  CHECK(f.quoted_moving_deviation > 1e-6);
}

TEST_CASE("gauge shifts leave brackets of gauge-invariant observables unchanged") {
  const Model plain = catalog_model(BackgroundKind::crossed);
  BackgroundParams p = catalog_params(BackgroundKind::crossed);
  p.gauge.linear = {0.5, -0.2, 0.1};
  p.gauge.quadratic = {Vec3{1.0, 0.2, 0.0}, Vec3{0.2, -0.5, 0.4}, Vec3{0.0, 0.4, 0.3}};
  const Model shifted{Particle{}, make_background(BackgroundKind::crossed, p)};
  const Vec3 x{2.0, 0.5, -1.0}, P{0.3, 0.8, -0.4}, s{0.0, 0.6, 0.8};
  const PhaseState za = init_state(x, P, s, plain);
  const PhaseState zb = init_state(x, P, s, shifted);
  for (const auto& id : all_components(BracketPair::xP)) {
    const auto [a, b] = id.observables();
    CHECK(dirac_bracket_direct(a, b, za, plain) ==
          doctest::Approx(dirac_bracket_direct(a, b, zb, shifted)).epsilon(1e-12));
  }
}
