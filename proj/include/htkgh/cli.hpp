#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace htkgh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line. args[0] is the program name. Returns 0 on success,
// 1 when the data fails validation or a file cannot be processed, and 2 on
// usage errors (unknown or malformed flags, out-of-range settings).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htkgh
