#include "ncspin/cli/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "ncspin/cli/reports.hpp"
#include "ncspin/io.hpp"

namespace ncspin::cli {

namespace fs = std::filesystem;

namespace {

class OutputDir {
 public:
  OutputDir(const std::string& dir, RunResult& result) : dir_(dir), result_(result) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("output.dir", 0, "cannot create '" + dir + "': " + ec.message());
  }

  template <class Fn>
  void write(const std::string& name, Fn fn) {
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw ConfigError("output.dir", 0, "cannot write '" + (dir_ / name).string() + "'");
    fn(os);
    result_.files.push_back(name);
  }

 private:
  fs::path dir_;
  RunResult& result_;
};

std::string extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

void require(RunResult& result, bool ok, const std::string& what) {
  if (!ok) result.failures.push_back(what);
}

Json header(const ExperimentConfig& cfg, ExperimentKind kind) {
  Json j;
  j["kind"] = to_string(kind);
  j["seed"] = cfg.seed;
  const Particle& p = cfg.particle;
  j["particle"] = {{"m", p.m}, {"e", p.e}, {"c", p.c}, {"g", p.g}, {"hbar", p.hbar},
                   {"alpha", p.alpha}};
  j["background"] = {{"kind", to_string(cfg.background)},
                     {"E", cfg.field.E},
                     {"B", cfg.field.B},
                     {"q", cfg.field.q},
                     {"gauge", cfg.model().field.gauge_description()}};
  return j;
}

void finish(Json& report, RunResult& result) {
  report["failures"] = result.failures;
  report["passed"] = result.failures.empty();
  result.exit_code = result.failures.empty() ? kExitOk : kExitPhysics;
}

RunResult run_simulate(const ExperimentConfig& cfg) {
  RunResult result;
  const Model model = cfg.model();
  const SimulationSpec& sim = cfg.simulate;
  PhaseState z0;
  try {
    z0 = init_state(sim.x, sim.P, sim.spin_dir, model);
  } catch (const InvalidArgument& e) {
    throw ConfigError("simulate", 0, e.what());
  }
  const bool spinless = model.particle.alpha == 0.0;
  const bool cyclotron = spinless && cfg.background == BackgroundKind::uniform_b;
  std::optional<CyclotronReference> ref;
  if (cyclotron) ref = cyclotron_reference(z0, model);
  double t_end = sim.t_end;
  if (sim.t_end_period) {
    if (!ref) throw ConfigError("simulate.t_end", 0, "'period' needs a spinless uniform-b run");
    t_end = ref->period;
  }

  Json report = header(cfg, ExperimentKind::simulate);
  report["integrator"] = {{"method", to_string(sim.integrator.method)},
                          {"step", sim.integrator.step},
                          {"tolerance", sim.integrator.tolerance},
                          {"project", sim.integrator.project},
                          {"t_end", t_end}};
  OutputDir out(cfg.out_dir, result);
  Trajectory traj;
  try {
    traj = integrate(z0, model, sim.integrator, t_end);
  } catch (const Error& e) {
    result.failures.push_back(std::string("integration failed: ") + e.what());
    finish(report, result);
    out.write("report.json", [&](std::ostream& os) { write_json(os, report); });
    return result;
  }

  const double drift = traj.max_energy_drift();
  const double constraint = traj.max_constraint_residual();
  report["steps"] = traj.steps;
  report["rejected"] = traj.rejected;
  report["samples"] = traj.samples.size();
  report["max_energy_drift"] = drift;
  report["max_constraint_residual"] = constraint;
  require(result, drift <= sim.max_energy_drift, "energy drift above simulate.max_energy_drift");
  require(result, constraint <= sim.max_constraint, "constraint residual above simulate.max_constraint");
  if (ref) {
    const double bnorm = std::sqrt(dot3(cfg.field.B, cfg.field.B));
    const Vec3 axis{cfg.field.B[0] / bnorm, cfg.field.B[1] / bnorm, cfg.field.B[2] / bnorm};
    const CyclotronCheck chk = cyclotron_check(traj, *ref, axis);
    Json cyc{{"period", ref->period},
             {"radius", ref->radius},
             {"center", ref->center},
             {"radius_deviation", chk.radius_deviation}};
    require(result, chk.radius_deviation < 1e-6, "cyclotron radius deviation above 1e-6");
    if (sim.t_end_period) {
      cyc["closure"] = chk.closure;
      require(result, chk.closure < 1e-6, "cyclotron orbit does not close to 1e-6 r");
    }
    report["cyclotron"] = std::move(cyc);
  }
  finish(report, result);

  out.write("trajectory" + extension(cfg.format), [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv)
      write_trajectory_csv(os, traj);
    else
      write_trajectory_json(os, traj);
  });
  out.write("report.json", [&](std::ostream& os) { write_json(os, report); });
  if (cfg.plotdata)
    out.write("plotdata.csv",
              [&](std::ostream& os) { write_plotdata(os, plot_trajectory(traj, !spinless)); });
  return result;
}

RunResult run_brackets(const ExperimentConfig& cfg) {
  RunResult result;
  const Model model = cfg.model();
  if (model.particle.alpha == 0.0)
    throw ConfigError("particle.alpha", 0, "bracket verification needs a spinning particle");
  const BracketReport br = verify_brackets(model, cfg.brackets.states, cfg.seed);
  Json report = header(cfg, ExperimentKind::brackets);
  report["brackets"] = to_json(br);
  report["adjudications"] = to_json(closed_form_adjudications());
  require(result, br.defining_ok(), "{T3, X}_D or {T4, X}_D above 1e-10");
  require(result, br.closed_ok(), "closed-form brackets deviate from the direct construction");
  require(result, br.table_resolved(), "auxiliary table entry unresolved");
  if (cfg.background == BackgroundKind::zero) {
    const FreeLimitCheck fl = free_limit_check(model.particle, cfg.brackets.states, cfg.seed);
    report["free_limit"] = to_json(fl);
    require(result, fl.passed(), "free-theory position bracket check failed");
  }
  finish(report, result);

  OutputDir out(cfg.out_dir, result);
  out.write("brackets" + extension(cfg.format), [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv)
      write_brackets_csv(os, br);
    else
      write_json(os, to_json(br));
  });
  out.write("report.json", [&](std::ostream& os) { write_json(os, report); });
  return result;
}

RunResult run_expand(const ExperimentConfig& cfg) {
  RunResult result;
  const Model model = cfg.model();
  const ExpansionReport er = scaling_order(model, cfg.expand.family, cfg.expand.ladder);
  Json report = header(cfg, ExperimentKind::expand);
  report["expansion"] = to_json(er);
  for (const auto& row : er.rows)
    require(result, row.passed(), "row " + row.name + " does not decrease at order " +
                                      std::to_string(row.order));
  finish(report, result);

  OutputDir out(cfg.out_dir, result);
  out.write("expansion" + extension(cfg.format), [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv)
      write_expansion_csv(os, er);
    else
      write_json(os, to_json(er));
  });
  out.write("report.json", [&](std::ostream& os) { write_json(os, report); });
  if (cfg.plotdata)
    out.write("plotdata.csv", [&](std::ostream& os) { write_plotdata(os, plot_expansion(er)); });
  return result;
}

RunResult run_spectrum(const ExperimentConfig& cfg) {
  RunResult result;
  const HydrogenParams hp = cfg.hydrogen();
  try {
    hp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("spectrum", 0, e.what());
  }
  const std::vector<HydrogenLevel> levels = hydrogen_fine_structure(hp);
  Json report = header(cfg, ExperimentKind::spectrum);
  report["units"] = to_string(cfg.spectrum.units);
  report["coupling"] = to_string(hp.coupling);
  report["hydrogen"] = {{"m", hp.m},         {"c", hp.c},
                        {"hbar", hp.hbar},   {"g", hp.g},
                        {"alpha_fs", hp.alpha_fs}, {"bohr_radius", hp.bohr_radius()},
                        {"n_max", hp.n_max}};

  // The Sommerfeld oracle applies to g = 2 with the shifted coupling.
  const bool oracle = hp.g == 2.0 && hp.coupling == SpinOrbitCoupling::shifted;
  double worst = 0.0;
  Json lv = Json::array();
  for (const auto& l : levels) {
    worst = std::max(worst, l.deviation);
    lv.push_back(to_json(l));
  }
  report["levels"] = std::move(lv);
  report["sommerfeld_applies"] = oracle;
  report["max_deviation"] = worst;
  if (oracle) require(result, worst < cfg.spectrum.max_deviation, "level deviates from the Sommerfeld oracle");
  report["splitting_2p"] = fine_splitting(2, 1, hp);

  double radial = 0.0;
  for (int n = 2; n <= hp.n_max; ++n)
    for (int l = 1; l < n; ++l) {
      const RadialExpectations a = closed_form_expectations(n, l, hp);
      const RadialExpectations b = numerical_expectations(n, l, hp);
      for (auto [x, y] : {std::pair{a.energy, b.energy}, {a.inv_r, b.inv_r}, {a.inv_r2, b.inv_r2},
                          {a.inv_r3, b.inv_r3}, {a.p4, b.p4}})
        radial = std::max(radial, std::abs(y / x - 1.0));
    }
  report["radial_oracle_deviation"] = radial;
  require(result, radial < 1e-6, "numerical radial oracle deviates above 1e-6");

  Json corr = Json::array();
  for (auto kind : {BackgroundKind::zero, BackgroundKind::uniform_e, BackgroundKind::uniform_b,
                    BackgroundKind::crossed}) {
    const CorrespondenceReport cr = verify_correspondence(catalog_model(kind, cfg.particle));
    require(result, cr.passed(), "commutator correspondence fails in " + cr.background);
    corr.push_back(to_json(cr));
  }
  report["correspondence"] = std::move(corr);
  const SpinOrbitIdentity id = spin_orbit_identity(cfg.particle);
  require(result, id.passed(), "assembled spin-orbit coefficient differs from e(g-1)/2m^2");
  report["spin_orbit_identity"] = to_json(id);
  const Particle hydrogen_particle{hp.m, 1.0, hp.c, hp.g, hp.hbar, 0.75 * hp.hbar * hp.hbar};
  report["coulomb_spin_orbit"] = to_json(coulomb_spin_orbit(hydrogen_particle, -hp.coulomb_k()));
  finish(report, result);

  OutputDir out(cfg.out_dir, result);
  out.write("levels" + extension(cfg.format), [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv) {
      write_levels_csv(os, levels);
    } else {
      Json arr = Json::array();
      for (const auto& l : levels) arr.push_back(to_json(l));
      write_json(os, arr);
    }
  });
  out.write("report.json", [&](std::ostream& os) { write_json(os, report); });
  if (cfg.plotdata)
    out.write("plotdata.csv",
              [&](std::ostream& os) { write_plotdata(os, plot_spectrum(levels, hp)); });
  return result;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return run_simulate(cfg);
    case ExperimentKind::brackets: return run_brackets(cfg);
    case ExperimentKind::expand: return run_expand(cfg);
    case ExperimentKind::spectrum: return run_spectrum(cfg);
  }
  throw InvalidArgument("unknown experiment kind");
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.kind) throw ConfigError("kind", 0, "missing experiment kind");
  return run_experiment(cfg, *cfg.kind);
}

CyclotronReference cyclotron_reference(const PhaseState& z0, const Model& model) {
  const auto& prm = model.field.params();
  if (model.field.kind() != BackgroundKind::uniform_b || !z0.spinless)
    throw InvalidArgument("cyclotron reference needs a spinless state in a uniform magnetic field");
  const Particle& pt = model.particle;
  const Vec3& B = prm.B;
  const double b2 = dot3(B, B);
  if (!(b2 > 0.0) || pt.e == 0.0) throw InvalidArgument("cyclotron reference needs e B != 0");
  const FourVector P = calP(z0, model);
  const Vec3 Ps = P.spatial();
  const double bnorm = std::sqrt(b2);
  const double par = dot3(Ps, B) / bnorm;
  const double perp = std::sqrt(std::max(0.0, dot3(Ps, Ps) - par * par));
  CyclotronReference ref;
  ref.period = 2.0 * std::numbers::pi * P[0] / std::abs(pt.e * bnorm);
  ref.radius = perp * pt.c / std::abs(pt.e * bnorm);
  const Vec3 PxB = cross3(Ps, B);
  const Vec3 x = z0.x.spatial();
  for (int i = 0; i < 3; ++i) ref.center[i] = x[i] + pt.c * PxB[i] / (pt.e * b2);
  return ref;
}

CyclotronCheck cyclotron_check(const Trajectory& traj, const CyclotronReference& ref,
                               const Vec3& axis) {
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  CyclotronCheck out;
  for (const auto& s : traj.samples) {
    Vec3 d{s.x[0] - ref.center[0], s.x[1] - ref.center[1], s.x[2] - ref.center[2]};
    const double along = dot3(d, axis);
    for (int i = 0; i < 3; ++i) d[i] -= along * axis[i];
    out.radius_deviation =
        std::max(out.radius_deviation, std::abs(std::sqrt(dot3(d, d)) - ref.radius) / ref.radius);
  }
  const Vec3& a = traj.samples.front().x;
  const Vec3& b = traj.samples.back().x;
  Vec3 gap{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double along = dot3(gap, axis);
  for (int i = 0; i < 3; ++i) gap[i] -= along * axis[i];
  out.closure = std::sqrt(dot3(gap, gap)) / ref.radius;
  return out;
}

}  // namespace ncspin::cli
