#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tariffnet {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,       // convergence failure or violations found
  kExitInvalidInput = 2,  // bad flags, unreadable or invalid scenario
};

/// Runs one command line (without the program name). Results go to `out`
/// or the --output file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tariffnet
