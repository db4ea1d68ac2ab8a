#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ncspin/cli/config.hpp"
#include "ncspin/cli/experiments.hpp"
#include "ncspin/cli/reports.hpp"

using namespace ncspin;
using namespace ncspin::cli;
namespace fs = std::filesystem;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_field(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return {};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "ncspin_unit" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("configuration parsing") {
  const ExperimentConfig cfg = parse_config(R"(
kind: simulate
seed: 9
particle: {m: 2, c: 20, hbar: 2}
background:
  kind: crossed
  E: [0.1, 0, 0]
  B: [0, 0, 0.5]
simulate:
  x: [1, 2, 3]
  P: [0.1, 0, 0]
  method: rk45
  t_end: 3
output: {dir: somewhere, format: json, plotdata: false}
)");
  CHECK(cfg.kind == ExperimentKind::simulate);
  CHECK(cfg.seed == 9);
  CHECK(cfg.particle.m == 2.0);
  CHECK(cfg.particle.alpha == doctest::Approx(3.0));
  CHECK(cfg.background == BackgroundKind::crossed);
  CHECK(cfg.field.B[2] == 0.5);
  CHECK(cfg.simulate.x[2] == 3.0);
  CHECK(cfg.simulate.integrator.method == IntegratorMethod::rk45);
  CHECK(cfg.simulate.t_end == 3.0);
  CHECK(cfg.out_dir == "somewhere");
  CHECK(cfg.format == OutputFormat::json);
  CHECK_FALSE(cfg.plotdata);
  CHECK(parse_config("simulate: {t_end: period}").simulate.t_end_period);
}

TEST_CASE("configuration errors name the line and field") {
  CHECK(error_line("kind: simulate\nparticle:\n  m: 1\n  mass: 2\n") == 4);
  CHECK(error_field("kind: simulate\nparticle:\n  m: 1\n  mass: 2\n") == "particle.mass");
  CHECK(error_line("kind: spectrum\nspectrum:\n  n_max: [1]\n") == 3);
  CHECK(error_line("kind: teleport\n") == 1);
  CHECK(error_field("background:\n  kind: zero\n  E: [1, 2]\n") == "background.E");
  CHECK(error_line("simulate:\n  step: -1\n") == 2);
  CHECK(error_line("kind: [unclosed\n") > 0);
  CHECK(error_field("simulate: {t_end: 0}") == "simulate.t_end");
  CHECK(error_field("particle: {m: -1}") == "particle");
  CHECK(error_field("expand: {ladder: [20, 10]}") == "expand.ladder");
  CHECK_THROWS_AS(parse_config(""), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("configuration errors are ncspin errors with readable text") {
  try {
    parse_config("output: {format: xml}\n");
    FAIL("expected a ConfigError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    CHECK(std::string(e.what()).find("output.format") != std::string::npos);
  }
}

TEST_CASE("plot data") {
  std::ostringstream os;
  CHECK_THROWS_AS(write_plotdata(os, {}), InvalidArgument);
  write_plotdata(os, {{"x1", 0.5, 2.0}});
  CHECK(os.str() == "series,t,value\nx1,0.5,2\n");
  HydrogenLevel l;
  l.n = 3;
  l.l = 2;
  l.j = 2.5;
  CHECK(level_label(l) == "3d5/2");
}

TEST_CASE("cyclotron experiment closes after one period") {
  ExperimentConfig cfg = parse_config(R"(
kind: simulate
particle: {alpha: 0}
background: {kind: uniform-b, B: [0, 0, 1]}
simulate: {P: [1, 0, 0], step: 1.0e-3, t_end: period, record_every: 1000}
)");
  cfg.out_dir = scratch("cyclotron").string();
  const RunResult r = run_experiment(cfg);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.failures.empty());
  CHECK(r.files == std::vector<std::string>{"trajectory.csv", "report.json", "plotdata.csv"});
  const std::string csv = slurp(fs::path(cfg.out_dir) / "trajectory.csv");
  CHECK(csv.rfind("t,x1,x2,x3,P1,P2,P3,S1,S2,S3,D1,D2,D3,T2,T3,T4,T5,H\n", 0) == 0);
}

TEST_CASE("cyclotron reference needs a spinless uniform-B run") {
  const Model spinning = catalog_model(BackgroundKind::uniform_b);
  const PhaseState z = init_state({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, spinning);
  CHECK_THROWS_AS(cyclotron_reference(z, spinning), InvalidArgument);
  ExperimentConfig cfg = parse_config("kind: simulate\nbackground: {kind: uniform-b, B: [0, 0, 1]}\nsimulate: {t_end: period}\n");
  cfg.out_dir = scratch("period").string();
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("physics failures give exit code 1 and still write the report") {
  ExperimentConfig cfg = parse_config(R"(
kind: spectrum
spectrum: {n_max: 2, max_deviation: 1.0e-30}
)");
  cfg.out_dir = scratch("strict").string();
  const RunResult r = run_experiment(cfg);
  CHECK(r.exit_code == kExitPhysics);
  CHECK_FALSE(r.failures.empty());
  CHECK(fs::exists(fs::path(cfg.out_dir) / "report.json"));
}

TEST_CASE("runs without a kind are usage errors") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("brackets experiment on the free theory") {
  ExperimentConfig cfg = parse_config("kind: brackets\nbackground: {kind: zero}\nbrackets: {states: 10}\noutput: {format: json}\n");
  cfg.out_dir = scratch("brackets").string();
  const RunResult r = run_experiment(cfg);
  CHECK(r.exit_code == kExitOk);
  const auto report = Json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
  CHECK(report["passed"].get<bool>());
  CHECK(report.contains("free_limit"));
  CHECK(report["adjudications"].size() == 7);
  for (const auto& p : report["brackets"]["pairs"]) CHECK(p["adjudicated"].get<double>() < 1e-8);
}

TEST_CASE("spectrum experiment writes levels with the documented columns") {
  ExperimentConfig cfg = parse_config("kind: spectrum\nspectrum: {n_max: 3}\n");
  cfg.out_dir = scratch("spectrum").string();
  const RunResult r = run_experiment(cfg);
  CHECK(r.exit_code == kExitOk);
  std::istringstream csv(slurp(fs::path(cfg.out_dir) / "levels.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,l,j,kinetic,spin_orbit,total,sommerfeld,deviation");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) < 1e-10);
  }
  CHECK(rows == 6);
}

TEST_CASE("identical configurations give identical bytes") {
  for (const char* text :
       {"kind: expand\nbackground: {kind: crossed, E: [0.3, -0.2, 0.5], B: [0.4, 0.1, -0.6]}\n",
        "kind: brackets\nseed: 5\nbackground: {kind: coulomb, q: -3}\nbrackets: {states: 4}\n",
        "kind: simulate\nbackground: {kind: uniform-e, E: [0.3, 0, 0]}\nsimulate: {P: [0.2, 0.1, 0], t_end: 0.5, method: rk45}\n"}) {
    ExperimentConfig cfg = parse_config(text);
    const fs::path da = scratch("det_a"), db = scratch("det_b");
    cfg.out_dir = da.string();
    const RunResult a = run_experiment(cfg);
    cfg.out_dir = db.string();
    const RunResult b = run_experiment(cfg);
    REQUIRE(a.files == b.files);
    for (const auto& f : a.files) CHECK(slurp(da / f) == slurp(db / f));
  }
}
