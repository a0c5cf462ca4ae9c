#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apsc::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // some check failed, or table mismatch
inline constexpr int kUsage = 2;        // bad arguments, parse or domain error
inline constexpr int kSolverFailed = 3;

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apsc::cli
