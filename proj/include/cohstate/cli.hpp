#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cohstate::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,  ///< bad flags, malformed input, guard violations
  kCheckFailure = 2,     ///< a self-check disagreed (e.g. oracle mismatch)
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohstate::cli
