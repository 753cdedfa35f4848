#include "blastertrace/log_model.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include "text_util.hpp"

namespace blastertrace {

namespace chr = std::chrono;

bool Date::valid() const {
  if (year < 1 || year > 9999) return false;
  return chr::year_month_day{chr::year{year}, chr::month{month}, chr::day{day}}.ok();
}

chr::sys_days Date::to_days() const {
  return chr::sys_days{chr::year_month_day{chr::year{year}, chr::month{month}, chr::day{day}}};
}

Date Date::from_days(chr::sys_days days) {
  chr::year_month_day ymd{days};
  return Date{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day())};
}

std::optional<Date> Date::make(int year, unsigned month, unsigned day) {
  Date d{year, month, day};
  if (!d.valid()) return std::nullopt;
  return d;
}

std::string Date::to_string() const {
  std::string y = std::to_string(year);
  while (y.size() < 4) y.insert(y.begin(), '0');
  return y + "-" + detail::pad2(static_cast<int>(month)) + "-" + detail::pad2(static_cast<int>(day));
}

std::optional<Timestamp> Timestamp::make(Date date, int hour, int minute, int second, std::int64_t micros) {
  if (!date.valid()) return std::nullopt;
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59) return std::nullopt;
  if (micros < 0 || micros >= kMicrosPerSecond) return std::nullopt;
  Timestamp ts;
  ts.date = date;
  ts.micros_of_day = ((hour * 60LL + minute) * 60LL + second) * kMicrosPerSecond + micros;
  return ts;
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  // YYYY-MM-DD HH:MM:SS then an optional fraction of one to six digits.
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' || text[10] != ' ' || text[13] != ':' ||
      text[16] != ':') {
    return std::nullopt;
  }
  auto num = [&](std::size_t pos, std::size_t len) { return detail::parse_unsigned<int>(text.substr(pos, len)); };
  auto y = num(0, 4), mo = num(5, 2), d = num(8, 2), h = num(11, 2), mi = num(14, 2), s = num(17, 2);
  if (!y || !mo || !d || !h || !mi || !s) return std::nullopt;
  std::int64_t micros = 0;
  if (text.size() > 19) {
    std::string_view frac = text.substr(20);
    if (text[19] != '.' || frac.empty() || frac.size() > 6 || !detail::all_digits(frac)) return std::nullopt;
    std::string padded(frac);
    padded.resize(6, '0');
    micros = *detail::parse_unsigned<std::int64_t>(padded);
  }
  auto date = Date::make(*y, static_cast<unsigned>(*mo), static_cast<unsigned>(*d));
  if (!date) return std::nullopt;
  return make(*date, *h, *mi, *s, micros);
}

Duration Timestamp::since_epoch() const {
  auto days = date.to_days().time_since_epoch().count();
  return Duration{days * kMicrosPerDay + micros_of_day};
}

Timestamp Timestamp::from_epoch(Duration since_epoch) {
  std::int64_t total = since_epoch.count();
  std::int64_t days = total / kMicrosPerDay;
  std::int64_t rem = total % kMicrosPerDay;
  if (rem < 0) {
    rem += kMicrosPerDay;
    --days;
  }
  Timestamp ts;
  ts.date = Date::from_days(chr::sys_days{chr::days{days}});
  ts.micros_of_day = rem;
  return ts;
}

Timestamp Timestamp::shifted(Duration delta) const {
  if (delta.count() == 0) return *this;
  return from_epoch(since_epoch() + delta);
}

std::string Timestamp::time_string(bool with_micros) const {
  std::string out = detail::pad2(hour()) + ":" + detail::pad2(minute()) + ":" + detail::pad2(second());
  if (with_micros) {
    std::string frac = std::to_string(subsecond_micros());
    while (frac.size() < 6) frac.insert(frac.begin(), '0');
    out += "." + frac;
  }
  return out;
}

std::string Timestamp::to_string() const {
  return date.to_string() + " " + time_string(subsecond_micros() != 0);
}

std::strong_ordering compare_timestamps(const Timestamp& a, const Timestamp& b) { return a <=> b; }

std::optional<IpAddress> IpAddress::parse(std::string_view text) {
  IpAddress ip;
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t end = pos;
    while (end < text.size() && detail::is_digit(text[end])) ++end;
    std::string_view part = text.substr(pos, end - pos);
    if (part.empty() || part.size() > 3) return std::nullopt;
    auto value = detail::parse_unsigned<unsigned>(part);
    if (!value || *value > 255) return std::nullopt;
    ip.octets[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(*value);
    pos = end;
    if (i < 3) {
      if (pos >= text.size() || text[pos] != '.') return std::nullopt;
      ++pos;
    }
  }
  if (pos != text.size()) return std::nullopt;
  return ip;
}

IpAddress IpAddress::from_u32(std::uint32_t value) {
  IpAddress ip;
  for (int i = 3; i >= 0; --i) {
    ip.octets[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value & 0xFF);
    value >>= 8;
  }
  return ip;
}

std::uint32_t IpAddress::to_u32() const {
  std::uint32_t v = 0;
  for (auto o : octets) v = (v << 8) | o;
  return v;
}

std::string IpAddress::to_string() const {
  return std::to_string(octets[0]) + "." + std::to_string(octets[1]) + "." + std::to_string(octets[2]) + "." +
         std::to_string(octets[3]);
}

std::optional<Port> Port::parse(std::string_view text) {
  if (text.size() > 5) return std::nullopt;
  auto value = detail::parse_unsigned<unsigned>(text);
  if (!value || *value > 65535) return std::nullopt;
  return Port{static_cast<std::uint16_t>(*value)};
}

FirewallAction::FirewallAction(Kind kind) : kind_(kind) {}

FirewallAction FirewallAction::parse(std::string_view token) {
  if (token == "OPEN") return FirewallAction{Kind::Open};
  if (token == "OPEN-INBOUND") return FirewallAction{Kind::OpenInbound};
  if (token == "CLOSE") return FirewallAction{Kind::Close};
  if (token == "DROP") return FirewallAction{Kind::Drop};
  FirewallAction other{Kind::Other};
  other.other_ = std::string(token);
  return other;
}

std::string FirewallAction::to_string() const {
  switch (kind_) {
    case Kind::Open: return "OPEN";
    case Kind::OpenInbound: return "OPEN-INBOUND";
    case Kind::Close: return "CLOSE";
    case Kind::Drop: return "DROP";
    case Kind::Other: return other_;
  }
  return other_;
}

bool operator==(const FirewallEntry& a, const FirewallEntry& b) {
  auto fields = [](const FirewallEntry& e) {
    return std::tie(e.ts, e.action, e.protocol, e.src_ip, e.dst_ip, e.src_port, e.dst_port, e.src_port_absent,
                    e.dst_port_absent, e.extras);
  };
  return fields(a) == fields(b);
}

bool operator==(const EventLogEntry& a, const EventLogEntry& b) {
  auto fields = [](const EventLogEntry& e) {
    return std::tie(e.ts, e.source, e.event_type, e.category, e.event_id, e.user, e.computer, e.message);
  };
  return fields(a) == fields(b);
}

bool operator==(const IdsAlert& a, const IdsAlert& b) {
  auto fields = [](const IdsAlert& e) {
    return std::tie(e.gid, e.sid, e.rev, e.message, e.priority, e.ts, e.src_ip, e.dst_ip, e.header_fields);
  };
  return fields(a) == fields(b);
}

namespace ids_keys {
bool is_reserved(std::string_view key) {
  return key == kClassification || key == kSrcPort || key == kDstPort || key == kFlags || key == kRaw;
}
}  // namespace ids_keys

std::string render_firewall_line(const FirewallEntry& entry) {
  std::string out = entry.ts.date.to_string() + " " + entry.ts.time_string(false) + " " + entry.action.to_string() +
                    " " + entry.protocol + " " + entry.src_ip.to_string() + " " + entry.dst_ip.to_string() + " " +
                    (entry.src_port_absent ? std::string("-") : std::to_string(entry.src_port.value)) + " " +
                    (entry.dst_port_absent ? std::string("-") : std::to_string(entry.dst_port.value));
  for (const auto& extra : entry.extras) out += " " + extra;
  return out;
}

std::string render_event_record(const EventLogEntry& e) {
  int hour12 = e.ts.hour() % 12;
  if (hour12 == 0) hour12 = 12;
  std::string time = std::to_string(hour12) + ":" + detail::pad2(e.ts.minute()) + ":" + detail::pad2(e.ts.second()) +
                     (e.ts.hour() < 12 ? " AM" : " PM");
  std::string date = std::to_string(e.ts.date.month) + "/" + std::to_string(e.ts.date.day) + "/" +
                     std::to_string(e.ts.date.year);
  std::string out;
  for (const std::string* cell : std::array<const std::string*, 5>{&date, &time, &e.source, &e.event_type, &e.category}) {
    out += *cell + "\t";
  }
  out += std::to_string(e.event_id) + "\t" + e.user + "\t" + e.computer + "\t" + e.message;
  return out;
}

std::string render_ids_block(const IdsAlert& alert) {
  auto field = [&](std::string_view key) -> const std::string* {
    auto it = alert.header_fields.find(key);
    return it == alert.header_fields.end() ? nullptr : &it->second;
  };

  std::string out = "[**] [" + std::to_string(alert.gid) + ":" + std::to_string(alert.sid) + ":" +
                    std::to_string(alert.rev) + "] " + alert.message + " [**]\n";
  if (const auto* cls = field(ids_keys::kClassification)) out += "[Classification: " + *cls + "] ";
  out += "[Priority: " + std::to_string(alert.priority) + "]\n";

  std::string date = detail::pad2(static_cast<int>(alert.ts.date.month)) + "/" +
                     detail::pad2(static_cast<int>(alert.ts.date.day));
  out += date + "-" + alert.ts.time_string(true) + " " + alert.src_ip.to_string();
  if (const auto* p = field(ids_keys::kSrcPort)) out += ":" + *p;
  out += " -> " + alert.dst_ip.to_string();
  if (const auto* p = field(ids_keys::kDstPort)) out += ":" + *p;

  static constexpr std::array<std::string_view, 6> kLeading{"PROTO", "TTL", "TOS", "ID", "IpLen", "DgmLen"};
  std::vector<std::string> tokens;
  for (auto key : kLeading) {
    if (const auto* v = field(key)) tokens.push_back(std::string(key) + ":" + *v);
  }
  for (const auto& [key, value] : alert.header_fields) {
    if (ids_keys::is_reserved(key)) continue;
    if (std::find(kLeading.begin(), kLeading.end(), key) != kLeading.end()) continue;
    tokens.push_back(key + ":" + value);
  }
  if (const auto* flags = field(ids_keys::kFlags)) tokens.push_back(*flags);
  if (!tokens.empty()) {
    out += "\n";
    for (std::size_t i = 0; i < tokens.size(); ++i) out += (i ? " " : "") + tokens[i];
  }
  if (const auto* raw = field(ids_keys::kRaw)) out += "\n" + *raw;
  return out;
}

}  // namespace blastertrace
