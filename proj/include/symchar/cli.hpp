#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symchar::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Environment variable naming the directory that relative output paths are resolved against.
inline constexpr const char* kOutputDirEnv = "SYMCHAR_OUTPUT_DIR";

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out`; errors go to `err` as single-line JSON objects.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symchar::cli
