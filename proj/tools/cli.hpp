#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperchord::cli {

// Exit codes of the hyperchord tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the default output format ("csv" or "json").
inline constexpr const char* kFormatEnv = "HYPERCHORD_FORMAT";

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest-safe text for a double: 17 significant digits, '.' decimal
/// separator regardless of locale.
std::string format_number(double value);

/// Parses "2,3,8", "2..64" or mixes such as "2..4,8,16".
std::vector<int> parse_int_list(const std::string& text);

}  // namespace hyperchord::cli
