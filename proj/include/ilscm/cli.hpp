#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ilscm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kDetectionError = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Data goes to
/// `out` unless an output path is given; diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ilscm::cli
