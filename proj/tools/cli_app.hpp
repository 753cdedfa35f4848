#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blastertrace::cli {

// Exit codes.
inline constexpr int kIdentified = 0;
inline constexpr int kNoCandidate = 1;
inline constexpr int kInputError = 2;
inline constexpr int kParseIssues = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blastertrace::cli
