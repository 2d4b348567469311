#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace reprolint::cli {

enum ExitCode : int {
  kOk = 0,
  kFindings = 1,  // a check failed, a path was flagged, a move was refused
  kUsage = 2,
  kInternal = 3,
  kGuardRefused = 4,
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reprolint::cli
