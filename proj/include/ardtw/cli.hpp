#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ardtw::cli {

/// Exit statuses of the command line.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

/// Runs one command; `args` excludes the program name. Human-readable
/// progress goes to `out`, diagnostics to `err`.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Win-loss ratio at a fixed number of decimals; "inf" when unbounded.
[[nodiscard]] std::string format_ratio(double ratio, int decimals = 1);

}  // namespace ardtw::cli
