#pragma once

#include <ostream>

namespace comporank {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitInconsistent = 2,
  kExitNoWinner = 3,
};

/// Entry point of the `comporank` tool. Reports go to `out`, diagnostics
/// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace comporank
