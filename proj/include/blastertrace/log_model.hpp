#pragma once

// Core record types shared by the log parsers and the tracing passes.

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blastertrace {

using Duration = std::chrono::microseconds;

/// Calendar date. Validity is checked by the factory helpers, not the struct.
struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  bool valid() const;
  std::chrono::sys_days to_days() const;
  static Date from_days(std::chrono::sys_days days);
  static std::optional<Date> make(int year, unsigned month, unsigned day);

  /// "YYYY-MM-DD"
  std::string to_string() const;

  friend auto operator<=>(const Date&, const Date&) = default;
};

/// Timezone-naive local timestamp: a date plus microseconds since midnight.
/// Ordering is lexicographic on (date, time of day).
struct Timestamp {
  static constexpr std::int64_t kMicrosPerSecond = 1'000'000;
  static constexpr std::int64_t kMicrosPerDay = 86'400 * kMicrosPerSecond;

  Date date;
  std::int64_t micros_of_day = 0;

  static std::optional<Timestamp> make(Date date, int hour, int minute, int second,
                                       std::int64_t micros = 0);

  /// Inverse of to_string(): "YYYY-MM-DD HH:MM:SS[.ffffff]".
  static std::optional<Timestamp> parse(std::string_view text);

  int hour() const { return static_cast<int>(micros_of_day / (3600 * kMicrosPerSecond)); }
  int minute() const { return static_cast<int>(micros_of_day / (60 * kMicrosPerSecond) % 60); }
  int second() const { return static_cast<int>(micros_of_day / kMicrosPerSecond % 60); }
  std::int64_t subsecond_micros() const { return micros_of_day % kMicrosPerSecond; }

  /// Microseconds since 1970-01-01 00:00:00 of the same naive clock.
  Duration since_epoch() const;
  static Timestamp from_epoch(Duration since_epoch);

  /// Shift by a signed duration; rolls the date over as needed.
  Timestamp shifted(Duration delta) const;

  /// "HH:MM:SS", with ".ffffff" appended when `with_micros` is set.
  std::string time_string(bool with_micros) const;

  /// "YYYY-MM-DD HH:MM:SS", plus ".ffffff" only if the sub-second part is non-zero.
  std::string to_string() const;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

std::strong_ordering compare_timestamps(const Timestamp& a, const Timestamp& b);

struct IpAddress {
  std::array<std::uint8_t, 4> octets{};

  static std::optional<IpAddress> parse(std::string_view text);
  static IpAddress from_u32(std::uint32_t value);
  std::uint32_t to_u32() const;
  std::string to_string() const;

  friend auto operator<=>(const IpAddress&, const IpAddress&) = default;
};

struct Port {
  std::uint16_t value = 0;

  static std::optional<Port> parse(std::string_view text);

  friend auto operator<=>(const Port&, const Port&) = default;
};

/// Firewall log action column. Unknown tokens are kept verbatim.
class FirewallAction {
 public:
  enum class Kind { Open, OpenInbound, Close, Drop, Other };

  FirewallAction() = default;
  explicit FirewallAction(Kind kind);

  /// Never fails: unrecognized tokens become Kind::Other.
  static FirewallAction parse(std::string_view token);

  Kind kind() const { return kind_; }
  std::string to_string() const;

  friend bool operator==(const FirewallAction&, const FirewallAction&) = default;

 private:
  Kind kind_ = Kind::Open;
  std::string other_;
};

/// Where a record came from. Not part of record equality.
struct SourceRef {
  std::size_t first_line = 0;  // 1-based, 0 when synthesized
  std::string text;            // verbatim source line(s), joined with '\n'
};

struct FirewallEntry {
  Timestamp ts;
  FirewallAction action;
  std::string protocol;
  IpAddress src_ip;
  IpAddress dst_ip;
  Port src_port;
  Port dst_port;
  // "-" in a port column (ICMP and friends) parses as port 0 with the flag set.
  bool src_port_absent = false;
  bool dst_port_absent = false;
  std::vector<std::string> extras;
  SourceRef source;

  friend bool operator==(const FirewallEntry& a, const FirewallEntry& b);
};

struct EventLogEntry {
  Timestamp ts;
  std::string source;
  std::string event_type;
  std::string category;
  std::uint32_t event_id = 0;
  std::string user;
  std::string computer;
  std::string message;
  SourceRef source_ref;

  friend bool operator==(const EventLogEntry& a, const EventLogEntry& b);
};

/// Keys the IDS parser reserves inside IdsAlert::header_fields.
namespace ids_keys {
inline constexpr std::string_view kClassification = "classification";
inline constexpr std::string_view kSrcPort = "src_port";
inline constexpr std::string_view kDstPort = "dst_port";
inline constexpr std::string_view kFlags = "flags";
inline constexpr std::string_view kRaw = "raw";

bool is_reserved(std::string_view key);
}  // namespace ids_keys

struct IdsAlert {
  std::uint32_t gid = 0;
  std::uint32_t sid = 0;
  std::uint32_t rev = 0;
  std::string message;
  std::uint32_t priority = 0;
  Timestamp ts;
  IpAddress src_ip;
  IpAddress dst_ip;
  std::map<std::string, std::string, std::less<>> header_fields;
  SourceRef source;

  friend bool operator==(const IdsAlert& a, const IdsAlert& b);
};

// Renderers produce exactly the grammar the parsers accept.
std::string render_firewall_line(const FirewallEntry& entry);
/// Tab-delimited event-viewer export line (single line; message has no newlines).
std::string render_event_record(const EventLogEntry& entry);
/// One alert block without the trailing blank separator line.
std::string render_ids_block(const IdsAlert& alert);

}  // namespace blastertrace
