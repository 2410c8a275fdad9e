#pragma once

// Entry point of the sigmaflow command-line tool.
//
// Exit codes: 0 success or Converged, 1 check failed, 2 usage error,
// 3 MaxTimeReached, 4 ConeViolation, 5 StepFailure.

#include <ostream>
#include <string>
#include <vector>

namespace sigmaflow::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kMaxTime = 3,
  kConeViolation = 4,
  kStepFailure = 5,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigmaflow::cli
