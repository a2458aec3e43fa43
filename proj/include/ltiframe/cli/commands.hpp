#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltiframe::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitDegenerate = 2,  // output is defined but the system is uncontrollable
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltiframe::cli
