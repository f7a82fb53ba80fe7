#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aitest::cli {

/// Exit codes: 0 success / null not rejected, 1 null rejected or a Monte
/// Carlo check failed, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aitest::cli
