// Entry point of the kstar command-line tool, callable from tests.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kstar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstar::cli
