#include <cstdio>
#include <filesystem>
#include <string>

#include "ncspin/cli/suites.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path scratch =
      argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "ncspin_acceptance";
  int failed = 0;
  for (const auto& c : ncspin::cli::acceptance_suite(scratch.string())) {
    std::printf("%s\n", c.line().c_str());
    std::fflush(stdout);
    if (!c.passed()) ++failed;
  }
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
