#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otter::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `otter` command line. Output goes to `out`, diagnostics to `err`.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otter::cli
