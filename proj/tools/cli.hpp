#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hullscope::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;           // success, or Interpolation for `membership`
inline constexpr int kExitExtrapolation = 1;
inline constexpr int kExitError = 2;

/// Runs the command line `args` (without the program name). Results go to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hullscope::cli
