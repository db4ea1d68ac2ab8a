#include <doctest.h>

#include <cmath>
#include <random>

#include "ncspin/dynamics.hpp"
#include "ncspin/expansion.hpp"
#include "ncspin/verify.hpp"

using namespace ncspin;

TEST_CASE("expanded Hamiltonian approaches the exact one") {
  double previous = 0.0;
  for (double c : {10.0, 80.0}) {
    Model model = catalog_model(BackgroundKind::crossed);
    model.particle.c = c;
    const PhaseState z = family_state(StateFamily{}, model);
    REQUIRE(expansion_valid(z, model));
    const double diff = std::abs(hamiltonian_expanded(z, model) - hamiltonian_cov(z, model));
    if (previous > 0.0) CHECK(diff * c * c < previous * 100.0);
    previous = diff;
  }
}

TEST_CASE("fast states are outside the expansion") {
  const Model model{};
  CHECK_FALSE(expansion_valid(init_state({0.0, 0.0, 0.0}, {3.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, model), model));
}

TEST_CASE("residuals shrink at the stated order") {
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const ExpansionReport r = scaling_order(catalog_model(kind), StateFamily{});
    for (const auto& row : r.rows) {
      CAPTURE(row.name);
      CHECK(row.passed());
      REQUIRE(row.points.size() == 4);
    }
  }
}

TEST_CASE("family states keep the velocity fixed along the ladder") {
  const StateFamily family{};
  for (double c : default_ladder()) {
    Model model = catalog_model(BackgroundKind::uniform_b);
    model.particle.c = c;
    const PhaseState z = family_state(family, model);
    const Vec3 P = kinetic_spatial(z, model);
    const double v2 = dot3(family.velocity, family.velocity);
    const double gm = model.particle.m / std::sqrt(1.0 - v2 / (c * c));
    for (int i = 0; i < 3; ++i) CHECK(P[i] / gm == doctest::Approx(family.velocity[i]).epsilon(1e-12));
  }
}

TEST_CASE("canonical variables round-trip and have canonical brackets") {
  std::mt19937_64 rng(41);
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    const PhaseState z = random_constrained_state(rng, model);
    const auto [x, P] = canonical_map_inverse(canonical_map(z, model), model);
    const Vec3 Pz = kinetic_spatial(z, model);
    for (int i = 0; i < 3; ++i) {
      CHECK(x[i] == doctest::Approx(z.x[i + 1]).epsilon(1e-12));
      CHECK(P[i] == doctest::Approx(Pz[i]).epsilon(1e-12));
    }
  }
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    Model slow = catalog_model(kind), fast = slow;
    fast.particle.c = 80.0;
    const CanonicalResiduals a = canonical_bracket_residuals(family_state(StateFamily{}, slow), slow);
    const CanonicalResiduals b = canonical_bracket_residuals(family_state(StateFamily{}, fast), fast);
    CHECK(b.xx <= a.xx / 16.0);
    CHECK(b.xP <= a.xP / 16.0);
    CHECK(b.PP <= a.PP / 16.0);
  }
}
