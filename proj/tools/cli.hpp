#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qfi::cli {

/// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCheckFailed = 2;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "start:stop:count" (count >= 1) or a single number.
std::vector<double> parse_range(const std::string& text);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// %.15g
std::string format_number(double value);

}  // namespace qfi::cli
