#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace blastertrace {

/// Normalize raw file bytes to UTF-8: strips a UTF-8 BOM and transcodes
/// UTF-16LE input that starts with FF FE. Other input passes through untouched.
std::string decode_log_text(std::string_view bytes);

/// Split on '\n', dropping one trailing '\r' per line. A final newline does not
/// start an extra line, so "" has zero lines and "a\n" has one.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace blastertrace
