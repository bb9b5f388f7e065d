#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfgame {

namespace exit_code {
inline constexpr int kSafe = 0;
inline constexpr int kUnsafe = 1;
inline constexpr int kUsage = 2;
inline constexpr int kUnknown = 3;
inline constexpr int kStateLimit = 4;
} // namespace exit_code

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace cfgame
