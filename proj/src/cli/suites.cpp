#include "ncspin/cli/suites.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>

#include "ncspin/cli/experiments.hpp"
#include "ncspin/pauli.hpp"
#include "ncspin/verify.hpp"
#include "ncspin/weyl.hpp"

namespace ncspin::cli {

namespace fs = std::filesystem;

bool Criterion::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Criterion::line() const {
  const char* verdict = passed() ? "PASS" : "FAIL";
  std::string out = id > 0 ? fmt::format("criterion {}: {} {}", id, verdict, title)
                           : fmt::format("{}: {}", title, verdict);
  for (const auto& c : checks)
    out += fmt::format(" | {}{} {}", c.passed ? "" : "FAILED ", c.name, c.detail);
  return out;
}

namespace {

Check check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

// Captures physics exceptions as failed checks so one criterion cannot abort
// the suite.
template <class Fn>
void guarded(Criterion& c, const std::string& name, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    c.checks.push_back(check(name, false, std::string("threw: ") + e.what()));
  }
}

std::vector<BackgroundKind> polynomial_kinds() {
  std::vector<BackgroundKind> out;
  for (auto k : catalog_kinds())
    if (k != BackgroundKind::coulomb) out.push_back(k);
  return out;
}

std::string name_of(BackgroundKind k) { return std::string(to_string(k)); }

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

Criterion criterion_dirac_property(std::size_t states, std::uint64_t seed) {
  Criterion c{1, "Dirac-bracket defining property", {}};
  for (auto kind : catalog_kinds())
    guarded(c, name_of(kind), [&] {
      const BracketReport r = verify_brackets(catalog_model(kind), states, seed);
      c.checks.push_back(check(name_of(kind), r.defining_ok(1e-10),
                               fmt::format("max|{{T,X}}|={:.2e} over {} states",
                                           r.defining_residual, r.states)));
    });
  return c;
}

Criterion criterion_closed_forms(std::size_t states, std::uint64_t seed) {
  Criterion c{2, "closed-form brackets after adjudication", {}};
  bool printed_defect_seen = false;
  for (auto kind : catalog_kinds())
    guarded(c, name_of(kind), [&] {
      const BracketReport r = verify_brackets(catalog_model(kind), states, seed);
      double worst = 0.0;
      for (const auto& p : r.pairs) worst = std::max(worst, p.adjudicated);
      for (const auto& e : r.table) printed_defect_seen |= !e.printed_ok;
      c.checks.push_back(check(name_of(kind), r.closed_ok(1e-8) && r.table_resolved(),
                               fmt::format("rel={:.2e} table_resolved={}", worst,
                                           r.table_resolved())));
    });
  const auto adj = closed_form_adjudications();
  c.checks.push_back(check("adjudications", adj.size() >= 3 && printed_defect_seen,
                           fmt::format("{} items documented, printed defects reproduced={}",
                                       adj.size(), printed_defect_seen)));
  return c;
}

Criterion criterion_free_limit(std::size_t states, std::uint64_t seed) {
  Criterion c{3, "free-theory position bracket", {}};
  guarded(c, "free", [&] {
    const FreeLimitCheck f = free_limit_check(Particle{}, states, seed);
    c.checks.push_back(check("quoted form at rest", f.quoted_rest_residual < 1e-10,
                             fmt::format("residual={:.2e}", f.quoted_rest_residual)));
    c.checks.push_back(check("exact form moving", f.exact_moving_residual < 1e-10,
                             fmt::format("residual={:.2e} (quoted form deviates {:.2e})",
                                         f.exact_moving_residual, f.quoted_moving_deviation)));
    const double expected = std::sqrt(3.0) / 200.0;
    c.checks.push_back(check("rest value", std::abs(f.rest_value - expected) < 1e-14,
                             fmt::format("{:.12f} vs sqrt(3)/200", f.rest_value)));
  });
  return c;
}

Criterion criterion_expansion() {
  Criterion c{4, "expansion orders along c = 10, 20, 40, 80", {}};
  const BracketPair pairs[] = {BracketPair::xx, BracketPair::xP, BracketPair::Sx,
                               BracketPair::PP, BracketPair::SP, BracketPair::SS};
  for (auto kind : catalog_kinds())
    guarded(c, name_of(kind), [&] {
      const Model base = catalog_model(kind);
      std::string detail;
      bool ok = true;
      for (auto pair : pairs) {
        const PairScaling row = scaling_order(pair, base, StateFamily{});
        ok &= row.passed();
        detail += fmt::format("{}{}{}", detail.empty() ? "" : " ", row.name,
                              row.exact ? "=exact" : row.decreasing ? "=ok" : "=NOT-DECREASING");
      }
      c.checks.push_back(check(name_of(kind), ok, detail));
    });
  return c;
}

Criterion criterion_dynamics(std::uint64_t seed) {
  Criterion c{5, "dynamics sanity", {}};
  guarded(c, "cyclotron", [&] {
    Particle pt;
    pt.alpha = 0.0;
    BackgroundParams bp;
    bp.B = {0.0, 0.0, 1.0};
    const Model model{pt, make_background(BackgroundKind::uniform_b, bp)};
    const PhaseState z0 = spinless_state({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, model);
    const CyclotronReference ref = cyclotron_reference(z0, model);
    IntegratorConfig cfg;
    cfg.step = 1e-3;
    const Trajectory traj = integrate(z0, model, cfg, ref.period);
    const CyclotronCheck chk = cyclotron_check(traj, ref, {0.0, 0.0, 1.0});
    c.checks.push_back(check("cyclotron", chk.radius_deviation < 1e-6 && chk.closure < 1e-6,
                             fmt::format("r={:.6f} dev={:.2e} closure={:.2e}", ref.radius,
                                         chk.radius_deviation, chk.closure)));
  });
  std::mt19937_64 rng(seed);
  for (auto kind : catalog_kinds()) {
    const Model model = catalog_model(kind);
    const PhaseState z0 = random_constrained_state(rng, model);
    guarded(c, "energy " + name_of(kind), [&] {
      IntegratorConfig cfg;
      cfg.step = 1e-3;
      cfg.record_every = 100;
      const Trajectory traj = integrate(z0, model, cfg, 10.0);
      c.checks.push_back(check("energy " + name_of(kind),
                               traj.steps >= 10000 && traj.max_energy_drift() < 1e-8,
                               fmt::format("drift={:.2e} steps={}", traj.max_energy_drift(),
                                           traj.steps)));
    });
    guarded(c, "projection " + name_of(kind), [&] {
      IntegratorConfig cfg;
      cfg.step = 1e-3;
      cfg.project = true;
      cfg.record_every = 100;
      const Trajectory traj = integrate(z0, model, cfg, 10.0);
      c.checks.push_back(check("projection " + name_of(kind),
                               traj.max_constraint_residual() < 1e-9,
                               fmt::format("constraints={:.2e}", traj.max_constraint_residual())));
    });
  }
  return c;
}

namespace {

PrecessionDiagnostics coulomb_orbit(double g) {
  Particle pt;
  pt.g = g;
  BackgroundParams bp;
  bp.q = -1.0;
  const Model model{pt, make_background(BackgroundKind::coulomb, bp)};
  const double beta = 0.05;
  const double v = beta * pt.c;
  const double P = v / std::sqrt(1.0 - beta * beta);
  const double r = 1.0 / (P * v);
  const PhaseState z0 = init_state({r, 0.0, 0.0}, {0.0, P, 0.0}, {1.0, 0.0, 0.0}, model);
  const double t_orbit = 2.0 * std::numbers::pi * r / v;
  IntegratorConfig cfg;
  cfg.step = t_orbit / 2000.0;
  cfg.record_every = 20;
  const Trajectory traj = integrate(z0, model, cfg, 20.0 * t_orbit);
  return precession_diagnostics(traj, model, {0.0, 0.0, 1.0}, 0.01);
}

}  // namespace

Criterion criterion_thomas() {
  Criterion c{6, "Thomas factor", {}};
  guarded(c, "classical", [&] {
    const double g = 2.0;
    const PrecessionDiagnostics d = coulomb_orbit(g);
    const double predicted = (g - 1.0) / g * d.naive_freq;
    const double rel = std::abs(d.spin_freq - predicted) / std::abs(predicted);
    c.checks.push_back(check("classical Coulomb orbit", rel <= 0.02,
                             fmt::format("spin/naive={:.4f} vs {:.4f} (rel {:.2e})",
                                         d.thomas_ratio, (g - 1.0) / g, rel)));
  });
  guarded(c, "quantum", [&] {
    const SpinOrbitIdentity s = spin_orbit_identity(Particle{});
    c.checks.push_back(check("assembled Hamiltonian", s.passed(),
                             fmt::format("kappa={:.15g} expected={:.15g} ratio={:.6f} mismatch={:.1e}",
                                         s.shifted, s.expected, s.ratio,
                                         s.hamiltonian_mismatch)));
  });
  return c;
}

Criterion criterion_correspondence() {
  Criterion c{7, "commutator and bracket correspondence", {}};
  for (auto kind : polynomial_kinds())
    guarded(c, name_of(kind), [&] {
      const CorrespondenceReport r = verify_correspondence(catalog_model(kind));
      bool ok = r.passed();
      std::string detail;
      for (const auto& row : r.rows) {
        if (kind == BackgroundKind::zero) {
          if (row.pair == "xx") ok &= row.leading == 4 && row.highest == 4;
          if (row.pair == "xP" || row.pair == "SS") ok &= row.exact();
        }
        detail += fmt::format("{}{}=", detail.empty() ? "" : " ", row.pair);
        detail += row.exact() ? "exact" : fmt::format("c^-{}", *row.leading);
      }
      c.checks.push_back(check(name_of(kind), ok,
                               detail + (r.hermitian ? " hermitian" : " NOT-hermitian")));
    });
  return c;
}

Criterion criterion_hydrogen() {
  Criterion c{8, "hydrogen fine structure", {}};
  guarded(c, "sommerfeld", [&] {
    HydrogenParams p;
    p.n_max = 4;
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& l : hydrogen_fine_structure(p)) {
      worst = std::max(worst, l.deviation);
      ++count;
    }
    c.checks.push_back(check("Sommerfeld n<=4", count > 0 && worst < 1e-10,
                             fmt::format("{} levels max rel={:.2e}", count, worst)));
  });
  guarded(c, "2p splitting", [&] {
    const double split = fine_splitting(2, 1, HydrogenParams::physical(2.0));
    const double target = 4.53e-5;
    c.checks.push_back(check("physical 2p splitting",
                             std::abs(split - target) <= 0.005 * target,
                             fmt::format("{:.5e} eV", split)));
    HydrogenParams naive = HydrogenParams::physical(2.0);
    naive.coupling = SpinOrbitCoupling::naive;
    const double ratio = fine_splitting(2, 1, naive) / split;
    c.checks.push_back(check("naive coupling", std::abs(ratio - 2.0) < 1e-12,
                             fmt::format("ratio={:.12f}", ratio)));
  });
  return c;
}

namespace {

ExperimentConfig determinism_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.seed = 7;
  cfg.format = OutputFormat::json;
  switch (kind) {
    case ExperimentKind::simulate:
      cfg.background = BackgroundKind::crossed;
      cfg.field = catalog_params(BackgroundKind::crossed);
      cfg.simulate.x = {2.0, 1.0, 0.0};
      cfg.simulate.P = {0.5, -0.3, 0.2};
      cfg.simulate.spin_dir = {0.0, 0.0, 1.0};
      cfg.simulate.t_end = 1.0;
      cfg.simulate.integrator.method = IntegratorMethod::rk45;
      cfg.simulate.integrator.step = 1e-2;
      break;
    case ExperimentKind::brackets:
      cfg.background = BackgroundKind::coulomb;
      cfg.field = catalog_params(BackgroundKind::coulomb);
      cfg.brackets.states = 5;
      break;
    case ExperimentKind::expand:
      cfg.background = BackgroundKind::uniform_e;
      cfg.field = catalog_params(BackgroundKind::uniform_e);
      break;
    case ExperimentKind::spectrum:
      cfg.spectrum.n_max = 3;
      break;
  }
  return cfg;
}

}  // namespace

Criterion criterion_determinism(const std::string& scratch_dir) {
  Criterion c{9, "determinism", {}};
  const ExperimentKind kinds[] = {ExperimentKind::simulate, ExperimentKind::brackets,
                                  ExperimentKind::expand, ExperimentKind::spectrum};
  for (auto kind : kinds) {
    const std::string name(to_string(kind));
    guarded(c, name, [&] {
      ExperimentConfig cfg = determinism_config(kind);
      std::vector<RunResult> runs;
      for (const char* sub : {"a", "b"}) {
        cfg.out_dir = (fs::path(scratch_dir) / name / sub).string();
        fs::remove_all(cfg.out_dir);
        runs.push_back(run_experiment(cfg));
      }
      bool same = runs[0].files == runs[1].files && !runs[0].files.empty();
      for (const auto& f : runs[0].files)
        same &= slurp(fs::path(scratch_dir) / name / "a" / f) ==
                slurp(fs::path(scratch_dir) / name / "b" / f);
      c.checks.push_back(
          check(name, same, fmt::format("{} files byte-identical={}", runs[0].files.size(), same)));
    });
  }
  return c;
}

std::vector<Criterion> acceptance_suite(const std::string& scratch_dir) {
  return {criterion_dirac_property(), criterion_closed_forms(), criterion_free_limit(),
          criterion_expansion(),      criterion_dynamics(),     criterion_thomas(),
          criterion_correspondence(), criterion_hydrogen(),     criterion_determinism(scratch_dir)};
}

namespace {

Criterion selftest_simulate() {
  Criterion c = criterion_dynamics();
  c.id = 0;
  c.title = "simulate self-test";
  guarded(c, "larmor", [&] {
    BackgroundParams bp;
    bp.B = {0.0, 0.0, 0.5};
    const Model model{Particle{}, make_background(BackgroundKind::uniform_b, bp)};
    const PhaseState z0 = init_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, model);
    const double larmor = model.particle.g * model.particle.e * bp.B[2] /
                          (2.0 * model.particle.m * model.particle.c);
    IntegratorConfig cfg;
    cfg.step = 1e-2;
    cfg.record_every = 10;
    const Trajectory traj = integrate(z0, model, cfg, 2.0 * 2.0 * std::numbers::pi / larmor);
    const PrecessionDiagnostics d = precession_diagnostics(traj, model);
    const double rel = std::abs(d.larmor_freq / larmor - 1.0);
    c.checks.push_back(check("Larmor rate at rest", rel < 1e-6, fmt::format("rel={:.2e}", rel)));
  });
  return c;
}

Criterion selftest_brackets() {
  Criterion a = criterion_dirac_property(10, 11);
  Criterion b = criterion_closed_forms(10, 12);
  Criterion f = criterion_free_limit(10, 13);
  Criterion c{0, "brackets self-test", {}};
  for (const Criterion* part : {&a, &b, &f})
    for (const auto& chk : part->checks) c.checks.push_back(chk);
  guarded(c, "antisymmetry", [&] {
    double worst = 0.0;
    for (auto kind : catalog_kinds())
      worst = std::max(worst, verify_brackets(catalog_model(kind), 5, 14).antisymmetry);
    c.checks.push_back(check("antisymmetry", worst < 1e-12, fmt::format("{:.2e}", worst)));
  });
  return c;
}

Criterion selftest_expand() {
  Criterion c = criterion_expansion();
  c.id = 0;
  c.title = "expand self-test";
  Criterion q = criterion_correspondence();
  for (const auto& chk : q.checks) c.checks.push_back(chk);
  guarded(c, "weyl", [&] {
    const WeylElement x = WeylElement::x(1);
    const WeylElement p = WeylElement::p(1);
    const WeylElement comm = x * p - p * x;
    const WeylElement expected = WeylElement::scalar({0.0, 1.0}, 1);
    c.checks.push_back(
        check("canonical commutator", (comm - expected).max_abs() < 1e-15, "[x,p]=i hbar"));
  });
  return c;
}

Criterion selftest_spectrum() {
  Criterion c = criterion_hydrogen();
  c.id = 0;
  c.title = "spectrum self-test";
  guarded(c, "radial oracle", [&] {
    HydrogenParams p;
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n)
      for (int l = 1; l < n; ++l) {
        const RadialExpectations a = closed_form_expectations(n, l, p);
        const RadialExpectations b = numerical_expectations(n, l, p);
        worst = std::max({worst, std::abs(b.inv_r3 / a.inv_r3 - 1.0),
                          std::abs(b.p4 / a.p4 - 1.0), std::abs(b.energy / a.energy - 1.0)});
      }
    c.checks.push_back(check("Numerov radial integrals", worst < 1e-8,
                             fmt::format("max rel={:.2e}", worst)));
  });
  Criterion t = criterion_thomas();
  for (const auto& chk : t.checks)
    if (chk.name == "assembled Hamiltonian") c.checks.push_back(chk);
  return c;
}

}  // namespace

Criterion selftest(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return selftest_simulate();
    case ExperimentKind::brackets: return selftest_brackets();
    case ExperimentKind::expand: return selftest_expand();
    case ExperimentKind::spectrum: return selftest_spectrum();
  }
  return {};
}

}  // namespace ncspin::cli
