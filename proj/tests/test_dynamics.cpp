#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncspin/dynamics.hpp"
#include "ncspin/verify.hpp"

using namespace ncspin;

TEST_CASE("integrator configuration is validated") {
  IntegratorConfig cfg;
  cfg.step = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = IntegratorConfig{};
  cfg.record_every = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK(parse_integrator_method("rk45") == IntegratorMethod::rk45);
  CHECK_THROWS_AS(parse_integrator_method("euler"), InvalidArgument);
}

TEST_CASE("spinless charge circles in a uniform magnetic field") {
  Model model;
  model.particle.alpha = 0.0;
  BackgroundParams bp;
  bp.B = {0.0, 0.0, 1.0};
  model.field = make_background(BackgroundKind::uniform_b, bp);
  const PhaseState z0 = spinless_state({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, model);
  const double P0 = std::sqrt(1.0 + 100.0);
  const double period = 2.0 * std::numbers::pi * P0;
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.record_every = 50;
  const Trajectory traj = integrate(z0, model, cfg, period);
  for (const auto& s : traj.samples) CHECK(std::hypot(s.x[0], s.x[1] + 10.0) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(std::abs(traj.samples.back().x[0]) < 1e-6);
  CHECK(std::abs(traj.samples.back().x[1]) < 1e-6);
}

TEST_CASE("energy and constraints are conserved") {
  std::mt19937_64 rng(31);
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    const PhaseState z0 = random_constrained_state(rng, model);
    IntegratorConfig cfg;
    cfg.step = 1e-3;
    cfg.record_every = 100;
    const Trajectory traj = integrate(z0, model, cfg, 2.0);
    CHECK(traj.max_energy_drift() < 1e-10);
    CHECK(traj.max_constraint_residual() < 1e-9);
  }
}

TEST_CASE("adaptive and fixed-step integrators agree") {
  std::mt19937_64 rng(32);
  const Model model = catalog_model(BackgroundKind::crossed);
  const PhaseState z0 = random_constrained_state(rng, model);
  IntegratorConfig fixed;
  fixed.step = 1e-3;
  IntegratorConfig adaptive;
  adaptive.method = IntegratorMethod::rk45;
  adaptive.step = 1e-2;
  adaptive.tolerance = 1e-12;
  const auto a = integrate(z0, model, fixed, 1.0).samples.back();
  const auto b = integrate(z0, model, adaptive, 1.0).samples.back();
  CHECK(a.t == doctest::Approx(b.t));
  for (int i = 0; i < 3; ++i) {
    CHECK(a.x[i] == doctest::Approx(b.x[i]).epsilon(1e-8));
    CHECK(a.S[i] == doctest::Approx(b.S[i]).epsilon(1e-8));
  }
}

TEST_CASE("projection restores the constraints") {
  std::mt19937_64 rng(33);
  const Model model = catalog_model(BackgroundKind::uniform_e);
  PhaseState z = random_constrained_state(rng, model);
  z.pi[0] += 1e-5;
  z.omega[2] += 1e-5;
  CHECK(constraint_residuals(z, model).max_abs() > 1e-7);
  const PhaseState fixed = project_constraints(z, model);
  CHECK(constraint_residuals(fixed, model).max_abs() < 1e-12);
  CHECK(fixed.x[1] == z.x[1]);
  CHECK(fixed.p[2] == z.p[2]);
}

TEST_CASE("spin at rest precesses at the Larmor rate") {
  BackgroundParams bp;
  bp.B = {0.0, 0.0, 0.5};
  const Model model{Particle{}, make_background(BackgroundKind::uniform_b, bp)};
  const PhaseState z0 = init_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, model);
  const double larmor = 2.0 * 0.5 / (2.0 * 10.0);
  IntegratorConfig cfg;
  cfg.step = 1e-2;
  cfg.record_every = 10;
  const Trajectory traj = integrate(z0, model, cfg, 3.0 * 2.0 * std::numbers::pi / larmor);
  const PrecessionDiagnostics d = precession_diagnostics(traj, model);
  CHECK(d.larmor_freq == doctest::Approx(larmor).epsilon(1e-8));
  CHECK(d.thomas_ratio == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("precession fit needs enough phase") {
  const Model model = catalog_model(BackgroundKind::uniform_b);
  const PhaseState z0 = init_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, model);
  IntegratorConfig cfg;
  const Trajectory traj = integrate(z0, model, cfg, 0.01);
  CHECK_THROWS_AS(precession_diagnostics(traj, model), FitError);
}
