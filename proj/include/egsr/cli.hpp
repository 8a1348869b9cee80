#pragma once

#include <iosfwd>

namespace egsr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `egsr` command-line tool. Returns the process exit
/// code: 0 on success, 1 on usage errors, 2 on data errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace egsr
