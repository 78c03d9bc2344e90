#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ccshuffle {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSizeGuard = 3;

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccshuffle
