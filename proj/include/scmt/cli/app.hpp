#pragma once

#include <iosfwd>

namespace scmt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMissionFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Runs one subcommand. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scmt::cli
