#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entb::cli {

// Exit codes: 0 success, 1 usage / IO / parse error, 2 invalid state.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvalid = 2;

// Runs `entb <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entb::cli
