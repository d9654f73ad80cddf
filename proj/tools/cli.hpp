#pragma once

#include <iosfwd>

namespace gwmaj {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

/// Runs the command line tool with the given streams; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwmaj
