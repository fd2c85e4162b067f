#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace connmod::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,   // run finished but a postcondition did not hold
  kIoError = 2,   // unreadable input, unwritable output, malformed file
  kConfigError = 3,
  kReferenceError = 4,  // clustering names a node the graph lacks
};

/// Runs one subcommand. `args` excludes the program name. Reports go to the
/// files named by --out, or to `out` when a subcommand allows it; diagnostics
/// go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace connmod::cli
