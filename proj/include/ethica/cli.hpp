#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ethica {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitExpectationFailed = 1,
  kExitUsage = 2,
  kExitResourceLimit = 3,
};

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ethica
