#include <doctest.h>

#include <cmath>

#include "ncspin/hydrogen.hpp"
#include "ncspin/errors.hpp"

using namespace ncspin;

TEST_CASE("radial integrals agree with the numerical oracle") {
  const HydrogenParams p;
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l < n; ++l) {
      CAPTURE(n);
      CAPTURE(l);
      const RadialExpectations a = closed_form_expectations(n, l, p);
      const RadialExpectations b = numerical_expectations(n, l, p);
      const double tol = l == 0 ? 1e-8 : 1e-10;
      CHECK(b.energy == doctest::Approx(a.energy).epsilon(tol));
      CHECK(b.inv_r == doctest::Approx(a.inv_r).epsilon(tol));
      CHECK(b.inv_r2 == doctest::Approx(a.inv_r2).epsilon(tol));
      if (l > 0) CHECK(b.inv_r3 == doctest::Approx(a.inv_r3).epsilon(tol));
      CHECK(b.p4 == doctest::Approx(a.p4).epsilon(tol));
    }
}

TEST_CASE("closed-form radial integrals") {
  HydrogenParams p;
  const double a = p.bohr_radius();
  const RadialExpectations e = closed_form_expectations(2, 1, p);
  CHECK(e.inv_r == doctest::Approx(1.0 / (4.0 * a)));
  CHECK(e.inv_r2 == doctest::Approx(1.0 / (12.0 * a * a)));
  CHECK(e.inv_r3 == doctest::Approx(1.0 / (24.0 * a * a * a)));
  CHECK(std::isinf(closed_form_expectations(2, 0, p).inv_r3));
}

TEST_CASE("g = 2 reproduces the Sommerfeld expansion") {
  HydrogenParams p;
  p.n_max = 4;
  const auto levels = hydrogen_fine_structure(p);
  CHECK(levels.size() == 12);
  for (const auto& l : levels) {
    CAPTURE(l.n);
    CAPTURE(l.j);
    CHECK(l.l >= 1);
    CHECK(l.deviation < 1e-10);
  }
  const auto two_p = fine_structure_level(2, 1, 1.5, p);
  CHECK(two_p.total_alpha4 == doctest::Approx(-1.0 / 128.0).epsilon(1e-12));
}

TEST_CASE("physical 2p splitting and the naive factor of two") {
  const double split = fine_splitting(2, 1, HydrogenParams::physical(2.0));
  CHECK(split == doctest::Approx(4.53e-5).epsilon(5e-3));
  HydrogenParams naive = HydrogenParams::physical(2.0);
  naive.coupling = SpinOrbitCoupling::naive;
  CHECK(fine_splitting(2, 1, naive) == doctest::Approx(2.0 * split).epsilon(1e-12));
}

TEST_CASE("the spin-orbit part scales with g - 1") {
  HydrogenParams a, b;
  b.g = 3.0;
  const double so2 = fine_structure_level(3, 2, 2.5, a).spin_orbit;
  const double so3 = fine_structure_level(3, 2, 2.5, b).spin_orbit;
  CHECK(so3 == doctest::Approx(2.0 * so2).epsilon(1e-12));
}

TEST_CASE("invalid quantum numbers are rejected") {
  const HydrogenParams p;
  CHECK_THROWS_AS(fine_structure_level(2, 0, 0.5, p), InvalidArgument);
  CHECK_THROWS_AS(fine_structure_level(2, 2, 1.5, p), InvalidArgument);
  CHECK_THROWS_AS(fine_structure_level(2, 1, 2.5, p), InvalidArgument);
  HydrogenParams bad;
  bad.n_max = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = HydrogenParams{};
  bad.m = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK(parse_spin_orbit_coupling("naive") == SpinOrbitCoupling::naive);
  CHECK_THROWS_AS(parse_spin_orbit_coupling("thomas"), InvalidArgument);
}
