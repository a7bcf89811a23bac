#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mahler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification reported failure
inline constexpr int kExitUsage = 2;   // bad flags or a library error

/// Runs the command line `args` (without the program name). Results go to
/// `out` (or the --out file), diagnostics and help text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mahler::cli
