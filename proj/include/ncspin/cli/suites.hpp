#pragma once

// Acceptance criteria and per-module self-test suites.

#include <cstdint>
#include <string>
#include <vector>

#include "ncspin/cli/config.hpp"

namespace ncspin::cli {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool passed() const;
  /// "criterion 3: PASS title | check detail | ..." on one line; criteria
  /// with id 0 print "title: PASS | ...".
  std::string line() const;
};

Criterion criterion_dirac_property(std::size_t states = 50, std::uint64_t seed = 1);
Criterion criterion_closed_forms(std::size_t states = 50, std::uint64_t seed = 2);
Criterion criterion_free_limit(std::size_t states = 50, std::uint64_t seed = 3);
Criterion criterion_expansion();
Criterion criterion_dynamics(std::uint64_t seed = 5);
Criterion criterion_thomas();
Criterion criterion_correspondence();
Criterion criterion_hydrogen();
/// Runs every experiment kind twice from the same configuration under
/// `scratch_dir` and compares the outputs byte by byte.
Criterion criterion_determinism(const std::string& scratch_dir);

std::vector<Criterion> acceptance_suite(const std::string& scratch_dir);

/// The invariant suite behind `<kind> --selftest`.
Criterion selftest(ExperimentKind kind);

}  // namespace ncspin::cli
