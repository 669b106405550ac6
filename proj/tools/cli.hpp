#pragma once

#include <iosfwd>

namespace cohort::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitTimeLimit = 3,
  kExitFailure = 4,
};

/// Runs one subcommand. Normal output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohort::cli
