#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tigress::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kIoError = 2,
  kNumericalError = 3,
};

/// Runs the command line `args` (program name excluded) and returns the
/// process exit code. Diagnostics go to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tigress::cli
