#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "ncspin/brackets.hpp"
#include "ncspin/dynamics.hpp"
#include "ncspin/verify.hpp"

using namespace ncspin;

namespace {

using StateFn = std::function<double(const PhaseState&)>;

Gradient numeric_gradient(const StateFn& f, const PhaseState& z, double h = 1e-5) {
  Gradient g{};
  const auto a = z.to_array();
  for (std::size_t k = 0; k < kPhaseDim; ++k) {
    auto up = a, dn = a;
    up[k] += h;
    dn[k] -= h;
    g[k] = (f(PhaseState::from_array(up, z.spinless)) - f(PhaseState::from_array(dn, z.spinless))) /
           (2.0 * h);
  }
  return g;
}

AntisymTensor4 random_tensor(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  AntisymTensor4 t;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = mu + 1; nu < 4; ++nu) t.set(mu, nu, n(rng));
  return t;
}

Vec3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {2.0 + u(rng), 1.0 + u(rng), u(rng)};
}

}  // namespace

TEST_CASE("tensor algebra identities") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> n;
  CHECK(minkowski_dot(FourVector{1, 0, 0, 0}, FourVector{1, 0, 0, 0}) == -1.0);
  CHECK(minkowski_dot(FourVector{0, 0, 1, 0}, FourVector{0, 0, 1, 0}) == 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const AntisymTensor4 F = random_tensor(rng);
    const FourVector u{n(rng), n(rng), n(rng), n(rng)};
    worst = std::max(worst, std::abs(minkowski_dot(u, tensor_vector(F, u))));
  }
  CHECK(worst < 1e-12);
  for (int k = 0; k < 100; ++k) {
    const Vec3 E{n(rng), n(rng), n(rng)}, B{n(rng), n(rng), n(rng)};
    const Vec3 S{n(rng), n(rng), n(rng)}, D{n(rng), n(rng), n(rng)};
    const double expected = 2.0 * dot3(E, D) + 4.0 * dot3(B, S);
    CHECK(contract_FS(AntisymTensor4::from_EB(E, B), AntisymTensor4::from_spin(S, D)) ==
          doctest::Approx(expected).epsilon(1e-13));
    const AntisymTensor4 t = random_tensor(rng);
    const AntisymTensor4 back = raise_indices(lower_indices(t));
    for (std::size_t mu = 0; mu < 4; ++mu)
      for (std::size_t nu = 0; nu < 4; ++nu) {
        CHECK(back(mu, nu) == t(mu, nu));
        CHECK(t(mu, nu) == -t(nu, mu));
      }
  }
}

TEST_CASE("field tensors match finite differences of the potentials") {
  std::mt19937_64 rng(62);
  const double h = 1e-5;
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    const FieldBackground& bg = model.field;
    for (int n = 0; n < 100; ++n) {
      const Vec3 r = random_point(rng);
      const FourVector x{0.0, r[0], r[1], r[2]};
      const AntisymTensor4 F = bg.field(x);
      // d_mu A^nu by central differences; F^{mu nu} = d^mu A^nu - d^nu A^mu.
      std::array<FourVector, 4> dA{};
      for (std::size_t mu = 0; mu < 4; ++mu) {
        FourVector up = x, dn = x;
        up[mu] += h;
        dn[mu] -= h;
        const FourVector a = bg.potential(up), b = bg.potential(dn);
        for (std::size_t nu = 0; nu < 4; ++nu) dA[mu][nu] = (a[nu] - b[nu]) / (2.0 * h);
      }
      for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = mu + 1; nu < 4; ++nu) {
          const double fd = eta(mu) * dA[mu][nu] - eta(nu) * dA[nu][mu];
          CHECK(fd == doctest::Approx(F(mu, nu)).epsilon(1e-6).scale(1.0));
        }
      const auto dF = bg.field_gradient(x);
      for (std::size_t l = 0; l < 4; ++l) {
        FourVector up = x, dn = x;
        up[l] += h;
        dn[l] -= h;
        const AntisymTensor4 a = bg.field(up), b = bg.field(dn);
        for (std::size_t mu = 0; mu < 4; ++mu)
          for (std::size_t nu = 0; nu < 4; ++nu)
            CHECK(dF[l](mu, nu) ==
                  doctest::Approx((a(mu, nu) - b(mu, nu)) / (2.0 * h)).epsilon(1e-6).scale(1.0));
      }
      FourVector later = x;
      later[0] = 3.7;
      CHECK(bg.potential(later)[0] == bg.potential(x)[0]);
    }
  }
}

TEST_CASE("canonical bracket of the coordinates is the symplectic form") {
  const Model model{};
  std::mt19937_64 rng(63);
  const PhaseState z = random_constrained_state(rng, model);
  const std::array<Observable (*)(std::size_t), 4> coords{obs::x, obs::p, obs::omega, obs::pi};
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = 0; b < 16; ++b) {
      const double value =
          poisson_bracket(coords[a / 4](a % 4), coords[b / 4](b % 4), z, model);
      // {q^mu, p^nu} = eta^{mu nu} with upper-index momenta.
      double expected = 0.0;
      if (a / 4 % 2 == 0 && b / 4 == a / 4 + 1 && a % 4 == b % 4) expected = eta(a % 4);
      if (b / 4 % 2 == 0 && a / 4 == b / 4 + 1 && a % 4 == b % 4) expected = -eta(a % 4);
      CHECK(value == expected);
    }
}

TEST_CASE("canonical bracket is antisymmetric, bilinear and satisfies Jacobi") {
  const Model model{};
  std::mt19937_64 rng(64);
  std::normal_distribution<double> n;
  const Observable f("f", [](const DualState& z, const Model&) {
    return z.x[1] * z.p[2] * z.p[2] + z.omega[3] * z.pi[1] - z.x[0] * z.p[0] * z.x[2];
  });
  const Observable g("g", [](const DualState& z, const Model&) {
    return z.p[1] * z.x[2] * z.x[3] + z.pi[3] * z.pi[0] * z.omega[2] + z.p[3];
  });
  const Observable k("k", [](const DualState& z, const Model&) {
    return z.x[1] * z.x[1] * z.p[1] + z.omega[1] * z.omega[2] * z.pi[2] - z.p[2] * z.x[3];
  });
  for (int trial = 0; trial < 10; ++trial) {
    std::array<double, kPhaseDim> a{};
    for (auto& v : a) v = n(rng);
    const PhaseState z = PhaseState::from_array(a);
    CHECK(poisson_bracket(f, g, z, model) ==
          doctest::Approx(-poisson_bracket(g, f, z, model)).epsilon(1e-12));
    const double s = n(rng);
    const Observable lin("f+sg", [&](const DualState& w, const Model& m) {
      (void)m;
      return (w.x[1] * w.p[2] * w.p[2] + w.omega[3] * w.pi[1] - w.x[0] * w.p[0] * w.x[2]) +
             s * (w.p[1] * w.x[2] * w.x[3] + w.pi[3] * w.pi[0] * w.omega[2] + w.p[3]);
    });
    CHECK(poisson_bracket(lin, k, z, model) ==
          doctest::Approx(poisson_bracket(f, k, z, model) + s * poisson_bracket(g, k, z, model))
              .epsilon(1e-12));
    const auto bracket_grad = [&](const Observable& u, const Observable& v) {
      return numeric_gradient([&](const PhaseState& w) { return poisson_bracket(u, v, w, model); }, z);
    };
    const double jacobi = poisson_bracket(f.gradient(z, model), bracket_grad(g, k)) +
                          poisson_bracket(g.gradient(z, model), bracket_grad(k, f)) +
                          poisson_bracket(k.gradient(z, model), bracket_grad(f, g));
    CHECK(std::abs(jacobi) < 1e-9);
  }
}

TEST_CASE("constrained initial data over random draws") {
  std::mt19937_64 rng(65);
  for (auto kind : catalog_kinds()) {
    const Model model = catalog_model(kind);
    for (int n = 0; n < 100; ++n) {
      const PhaseState z = random_constrained_state(rng, model);
      const ConstraintResiduals r = constraint_residuals(z, model);
      CHECK(r.max_abs() < 1e-10);
      for (double s : r.ssc) CHECK(std::abs(s) < 1e-10);
    }
  }
}

TEST_CASE("the Dirac bracket also annihilates the constraints on omega and pi") {
  std::mt19937_64 rng(66);
  for (auto kind : catalog_kinds()) {
    const Model model = catalog_model(kind);
    const PhaseState z = random_constrained_state(rng, model);
    for (std::size_t mu = 0; mu < 4; ++mu)
      for (const Observable& X : {obs::omega(mu), obs::pi(mu)}) {
        CHECK(std::abs(dirac_bracket_direct(obs::T3(), X, z, model)) < 1e-10);
        CHECK(std::abs(dirac_bracket_direct(obs::T4(), X, z, model)) < 1e-10);
      }
  }
}

TEST_CASE("Jacobi identity of the Dirac bracket") {
  std::mt19937_64 rng(67);
  const std::vector<Observable> pool{obs::x(1), obs::x(2), obs::P(1), obs::P(3), obs::S(1, 2),
                                     obs::S(2, 3)};
  for (auto kind : catalog_kinds()) {
    CAPTURE(to_string(kind));
    const Model model = catalog_model(kind);
    const PhaseState z = random_constrained_state(rng, model);
    const DiracStructure ds(z, model);
    const auto bracket_grad = [&](const Observable& u, const Observable& v) {
      return numeric_gradient(
          [&](const PhaseState& w) { return dirac_bracket_direct(u, v, w, model); }, z);
    };
    for (std::size_t a = 0; a < pool.size(); ++a)
      for (std::size_t b = a + 1; b < pool.size(); ++b)
        for (std::size_t c = b + 1; c < pool.size(); ++c) {
          const Observable &A = pool[a], &B = pool[b], &C = pool[c];
          const double jacobi = ds.bracket(A.gradient(z, model), bracket_grad(B, C)) +
                                ds.bracket(B.gradient(z, model), bracket_grad(C, A)) +
                                ds.bracket(C.gradient(z, model), bracket_grad(A, B));
          CAPTURE(A.name() + " " + B.name() + " " + C.name());
          CHECK(std::abs(jacobi) < 1e-7);
        }
  }
}

TEST_CASE("coefficient blocks in the free theory") {
  const Model model{};
  std::mt19937_64 rng(68);
  const PhaseState z = random_constrained_state(rng, model);
  const DiracCoefficients k = dirac_coefficients(z, model);
  const Particle& p = model.particle;
  const double mc = p.m * p.c;
  CHECK(k.a == doctest::Approx(-p.e / (2.0 * p.m * p.m * p.c * p.c * p.c)));
  CHECK(k.u0 == doctest::Approx(k.P[0]));
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      CHECK(k.K[mu][nu] == 0.0);
      for (std::size_t al = 0; al < 4; ++al) CHECK(k.L[mu][nu][al] == 0.0);
      const double expected = (mu == nu ? eta(mu) : 0.0) + k.P[mu] * k.P[nu] / (mc * mc);
      CHECK(k.g_eff[mu][nu] == doctest::Approx(expected).epsilon(1e-14).scale(1.0));
    }
}

TEST_CASE("spinless motion matches a reference Lorentz-force integrator") {
  Model model = catalog_model(BackgroundKind::crossed);
  model.particle.alpha = 0.0;
  const Particle& pt = model.particle;
  const Vec3 E = model.field.params().E, B = model.field.params().B;
  const Vec3 x0{2.0, 1.0, 0.0}, P0{0.8, -0.4, 0.3};
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.record_every = 100;
  const Trajectory traj = integrate(spinless_state(x0, P0, model), model, cfg, 1.0);

  using Y = std::array<double, 6>;
  const auto rhs = [&](const Y& y) {
    const Vec3 P{y[3], y[4], y[5]};
    const double P0t = std::sqrt(dot3(P, P) + pt.m * pt.m * pt.c * pt.c);
    const Vec3 v{pt.c * P[0] / P0t, pt.c * P[1] / P0t, pt.c * P[2] / P0t};
    const Vec3 vxB = cross3(v, B);
    Y d{};
    for (int i = 0; i < 3; ++i) {
      d[i] = v[i];
      d[i + 3] = pt.e * (E[i] + vxB[i] / pt.c);
    }
    return d;
  };
  Y y{x0[0], x0[1], x0[2], P0[0], P0[1], P0[2]};
  const double h = cfg.step;
  std::size_t sample = 1;
  for (std::size_t step = 1; step <= traj.steps; ++step) {
    const auto axpy = [](const Y& a, const Y& b, double s) {
      Y o{};
      for (int i = 0; i < 6; ++i) o[i] = a[i] + s * b[i];
      return o;
    };
    const Y k1 = rhs(y), k2 = rhs(axpy(y, k1, h / 2)), k3 = rhs(axpy(y, k2, h / 2)),
            k4 = rhs(axpy(y, k3, h));
    for (int i = 0; i < 6; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (sample < traj.samples.size() && step % cfg.record_every == 0) {
      const auto& s = traj.samples[sample++];
      for (int i = 0; i < 3; ++i) {
        CHECK(s.x[i] == doctest::Approx(y[i]).epsilon(1e-8).scale(1.0));
        CHECK(s.P[i] == doctest::Approx(y[i + 3]).epsilon(1e-8).scale(1.0));
      }
    }
  }
  CHECK(sample == traj.samples.size());
}

TEST_CASE("trajectories are gauge invariant") {
  const Model plain = catalog_model(BackgroundKind::crossed);
  BackgroundParams p = catalog_params(BackgroundKind::crossed);
  p.gauge.linear = {0.5, -0.2, 0.1};
  p.gauge.quadratic = {Vec3{1.0, 0.2, 0.0}, Vec3{0.2, -0.5, 0.4}, Vec3{0.0, 0.4, 0.3}};
  const Model shifted{Particle{}, make_background(BackgroundKind::crossed, p)};
  const Vec3 x{2.0, 0.5, -1.0}, P{0.3, 0.8, -0.4}, s{0.0, 0.6, 0.8};
  IntegratorConfig cfg;
  cfg.record_every = 100;
  const Trajectory a = integrate(init_state(x, P, s, plain), plain, cfg, 2.0);
  const Trajectory b = integrate(init_state(x, P, s, shifted), shifted, cfg, 2.0);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    if (k > 0) CHECK(a.samples[k].t > a.samples[k - 1].t);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(a.samples[k].x[i] - b.samples[k].x[i]) < 1e-9);
      CHECK(std::abs(a.samples[k].P[i] - b.samples[k].P[i]) < 1e-9);
      CHECK(std::abs(a.samples[k].S[i] - b.samples[k].S[i]) < 1e-9);
    }
  }
}
