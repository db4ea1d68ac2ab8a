#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <optional>
#include <string>

#include "ncspin/cli/config.hpp"
#include "ncspin/cli/experiments.hpp"
#include "ncspin/cli/suites.hpp"

namespace {

using namespace ncspin::cli;

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool selftest = false;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
  auto* cfg = sub->add_option("--config", o.config, "YAML experiment configuration");
  if (config_required) cfg->required();
  sub->add_option("--out", o.out, "output directory (overrides output.dir)");
  sub->add_option("--format", o.format, "csv or json (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", o.seed, "random seed (overrides seed)");
  sub->add_flag("--selftest", o.selftest, "run the invariant suite and exit with its verdict");
}

int run(const Options& o, std::optional<ExperimentKind> kind) {
  if (o.selftest) {
    if (!kind) throw ConfigError("--selftest", 0, "needs an experiment subcommand");
    const Criterion c = selftest(*kind);
    fmt::print("{}\n", c.line());
    return c.passed() ? kExitOk : kExitPhysics;
  }
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.format.empty()) cfg.format = parse_output_format(o.format);
  if (o.seed) cfg.seed = *o.seed;
  if (kind && cfg.kind && *cfg.kind != *kind)
    throw ConfigError("kind", 0,
                      fmt::format("config declares '{}' but the subcommand is '{}'",
                                  to_string(*cfg.kind), to_string(*kind)));
  const RunResult r = kind ? run_experiment(cfg, *kind) : run_experiment(cfg);
  for (const auto& f : r.files) fmt::print("wrote {}/{}\n", cfg.out_dir, f);
  for (const auto& f : r.failures) fmt::print(stderr, "assertion failed: {}\n", f);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-model spinning particle experiments"};
  app.require_subcommand(1);
  Options opts;
  std::optional<ExperimentKind> kind;
  for (auto k : {ExperimentKind::simulate, ExperimentKind::brackets, ExperimentKind::expand,
                 ExperimentKind::spectrum}) {
    const std::string name(to_string(k));
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    add_common(sub, opts, false);
    sub->callback([&kind, k] { kind = k; });
  }
  auto* run_sub = app.add_subcommand("run", "run the experiment named by the config's kind");
  add_common(run_sub, opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return run(opts, kind);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitUsage;
  } catch (const ncspin::InvalidArgument& e) {
    fmt::print(stderr, "invalid argument: {}\n", e.what());
    return kExitUsage;
  } catch (const ncspin::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitPhysics;
  }
}
