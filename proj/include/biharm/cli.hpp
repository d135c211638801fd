#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biharm {

// Exit codes: 0 verdict matches (or nothing expected), 2 mismatch, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMismatch = 2;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biharm
