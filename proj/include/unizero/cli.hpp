#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unizero {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitIncomplete = 3,
};

/// Environment variable holding the default thread budget.
inline constexpr const char* kThreadsEnv = "UNIZERO_THREADS";

/// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace unizero
