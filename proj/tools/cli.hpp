#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Runs one invocation. `args` excludes the program name. Machine-readable
/// output goes to `out`; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcm::cli
