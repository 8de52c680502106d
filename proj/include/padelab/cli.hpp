#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace padelab::cli {

/// Exit codes: 0 success, 1 verify found a failing report, 2 usage or
/// validation error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedCheck = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Default cap on n when PADE_LAB_MAX_N is unset.
inline constexpr std::size_t kDefaultMaxN = 512;

/// Runs one command line (args excludes the program name). Reports go to
/// `out` unless -o is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padelab::cli
