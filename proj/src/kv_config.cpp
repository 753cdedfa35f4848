#include "blastertrace/kv_config.hpp"

#include "blastertrace/text_input.hpp"
#include "text_util.hpp"

namespace blastertrace {

std::vector<KvSection> parse_kv_config(std::string_view text) {
  std::string decoded = decode_log_text(text);
  std::vector<KvSection> sections(1);
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(decoded)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("", "line " + std::to_string(line_no) + ": unterminated section header");
      }
      KvSection section;
      section.name = std::string(detail::trim(line.substr(1, line.size() - 2)));
      section.line = line_no;
      sections.push_back(std::move(section));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    sections.back().entries.push_back({key, std::string(detail::trim(line.substr(eq + 1))), line_no});
  }
  return sections;
}

bool parse_bool(std::string_view text, bool& out) {
  std::string v = detail::ascii_lower(detail::trim(text));
  if (v == "true" || v == "yes" || v == "1" || v == "on") {
    out = true;
    return true;
  }
  if (v == "false" || v == "no" || v == "0" || v == "off") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string_view item = detail::trim(text.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace blastertrace
