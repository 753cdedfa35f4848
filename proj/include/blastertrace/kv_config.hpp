#pragma once

// Minimal "key = value" configuration format with optional [section] headers.
// Lines starting with '#' or ';' are comments. Used for fingerprint overrides,
// scenario configs and corpus manifests.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blastertrace {

/// Invalid configuration input. `field()` names the offending key (may be empty).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct KvEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct KvSection {
  std::string name;  // empty for keys before the first header
  std::size_t line = 0;
  std::vector<KvEntry> entries;
};

/// Throws ConfigError on lines that are neither comments, headers nor key=value.
std::vector<KvSection> parse_kv_config(std::string_view text);

bool parse_bool(std::string_view text, bool& out);

/// Comma-separated list, each item trimmed, empty items dropped.
std::vector<std::string> split_list(std::string_view text);

}  // namespace blastertrace
