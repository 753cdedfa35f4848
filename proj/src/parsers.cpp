#include "blastertrace/parsers.hpp"

#include <array>
#include <optional>

#include "blastertrace/text_input.hpp"
#include "text_util.hpp"

namespace blastertrace {

namespace {

using detail::Token;

struct Clock {
  int hour = 0;
  int minute = 0;
  int second = 0;
  std::int64_t micros = 0;
};

// "H:MM:SS" or "HH:MM:SS", optionally followed by ".f" .. ".ffffff" when allowed.
std::optional<Clock> parse_clock(std::string_view s, bool allow_fraction) {
  Clock c;
  auto colon1 = s.find(':');
  if (colon1 == std::string_view::npos || colon1 == 0 || colon1 > 2) return std::nullopt;
  const std::size_t colon2 = colon1 + 3;
  if (s.size() <= colon2 || s[colon2] != ':') return std::nullopt;
  auto hour = detail::parse_unsigned<int>(s.substr(0, colon1));
  auto minute = detail::parse_unsigned<int>(s.substr(colon1 + 1, 2));
  std::string_view rest = s.substr(colon2 + 1);
  std::string_view frac;
  if (rest.size() > 2) {
    if (!allow_fraction || rest[2] != '.') return std::nullopt;
    frac = rest.substr(3);
    rest = rest.substr(0, 2);
    if (frac.empty() || frac.size() > 6 || !detail::all_digits(frac)) return std::nullopt;
  }
  if (rest.size() != 2) return std::nullopt;
  auto second = detail::parse_unsigned<int>(rest);
  if (!hour || !minute || !second) return std::nullopt;
  c.hour = *hour;
  c.minute = *minute;
  c.second = *second;
  if (!frac.empty()) {
    std::string padded(frac);
    padded.resize(6, '0');
    c.micros = *detail::parse_unsigned<std::int64_t>(padded);
  }
  if (c.hour > 23 || c.minute > 59 || c.second > 59) return std::nullopt;
  return c;
}

std::optional<Timestamp> make_ts(const Date& d, const Clock& c) {
  return Timestamp::make(d, c.hour, c.minute, c.second, c.micros);
}

template <class T>
void reject(ParseOutcome<T>& out, std::size_t line_no, std::string_view line, std::string reason) {
  out.issues.push_back({line_no, std::string(line), std::move(reason)});
  ++out.lines.rejected;
}

// ---------------------------------------------------------------------------
// Firewall log

constexpr std::array<std::string_view, 8> kFirewallFields{"date",   "time",   "action",   "protocol",
                                                          "src-ip", "dst-ip", "src-port", "dst-port"};

std::optional<Date> parse_iso_date(std::string_view s) {
  auto d1 = s.find('-');
  if (d1 != 4) return std::nullopt;
  auto d2 = s.find('-', d1 + 1);
  if (d2 == std::string_view::npos) return std::nullopt;
  std::string_view ms = s.substr(d1 + 1, d2 - d1 - 1);
  std::string_view ds = s.substr(d2 + 1);
  if (ms.empty() || ms.size() > 2 || ds.empty() || ds.size() > 2) return std::nullopt;
  auto y = detail::parse_unsigned<int>(s.substr(0, 4));
  auto m = detail::parse_unsigned<unsigned>(ms);
  auto d = detail::parse_unsigned<unsigned>(ds);
  if (!y || !m || !d) return std::nullopt;
  return Date::make(*y, *m, *d);
}

// Returns an error reason, or nullopt with `entry` filled.
std::optional<std::string> parse_firewall_line(std::string_view line, FirewallEntry& entry) {
  auto tokens = detail::split_ws(line);
  if (tokens.size() < kFirewallFields.size()) {
    return "expected at least 8 columns, found " + std::to_string(tokens.size());
  }
  auto date = parse_iso_date(tokens[0].text);
  if (!date) return "invalid date '" + std::string(tokens[0].text) + "'";
  auto clock = parse_clock(tokens[1].text, false);
  if (!clock) return "invalid time '" + std::string(tokens[1].text) + "'";
  entry.ts = *make_ts(*date, *clock);
  entry.action = FirewallAction::parse(tokens[2].text);
  entry.protocol = std::string(tokens[3].text);
  auto src = IpAddress::parse(tokens[4].text);
  if (!src) return "invalid source address '" + std::string(tokens[4].text) + "'";
  auto dst = IpAddress::parse(tokens[5].text);
  if (!dst) return "invalid destination address '" + std::string(tokens[5].text) + "'";
  entry.src_ip = *src;
  entry.dst_ip = *dst;

  auto port = [](std::string_view text, Port& out, bool& absent) {
    if (text == "-") {
      out = Port{0};
      absent = true;
      return true;
    }
    auto p = Port::parse(text);
    if (!p) return false;
    out = *p;
    absent = false;
    return true;
  };
  if (!port(tokens[6].text, entry.src_port, entry.src_port_absent)) {
    return "invalid source port '" + std::string(tokens[6].text) + "'";
  }
  if (!port(tokens[7].text, entry.dst_port, entry.dst_port_absent)) {
    return "invalid destination port '" + std::string(tokens[7].text) + "'";
  }
  entry.extras.clear();
  for (std::size_t i = kFirewallFields.size(); i < tokens.size(); ++i) entry.extras.emplace_back(tokens[i].text);
  return std::nullopt;
}

std::optional<std::string> check_fields_header(std::string_view line) {
  auto tokens = detail::split_ws(line.substr(std::string_view("#Fields:").size()));
  for (std::size_t i = 0; i < kFirewallFields.size(); ++i) {
    if (i >= tokens.size() || tokens[i].text != kFirewallFields[i]) {
      return "#Fields header does not start with the expected column order "
             "'date time action protocol src-ip dst-ip src-port dst-port'";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Event-viewer export

// "M/D/YYYY"
std::optional<Date> parse_us_date(std::string_view s) {
  auto s1 = s.find('/');
  if (s1 == std::string_view::npos || s1 == 0 || s1 > 2) return std::nullopt;
  auto s2 = s.find('/', s1 + 1);
  if (s2 == std::string_view::npos || s2 == s1 + 1 || s2 > s1 + 3) return std::nullopt;
  std::string_view ys = s.substr(s2 + 1);
  if (ys.size() != 4) return std::nullopt;
  auto m = detail::parse_unsigned<unsigned>(s.substr(0, s1));
  auto d = detail::parse_unsigned<unsigned>(s.substr(s1 + 1, s2 - s1 - 1));
  auto y = detail::parse_unsigned<int>(ys);
  if (!m || !d || !y) return std::nullopt;
  return Date::make(*y, *m, *d);
}

bool starts_with_date_token(std::string_view line) {
  if (line.empty() || !detail::is_digit(line.front())) return false;
  std::size_t end = 0;
  while (end < line.size() && !detail::is_space(line[end])) ++end;
  return parse_us_date(line.substr(0, end)).has_value();
}

bool is_meridiem(std::string_view s) { return s == "AM" || s == "PM" || s == "am" || s == "pm"; }

// 12-hour clock with an AM/PM marker, or 24-hour when `meridiem` is empty.
std::optional<Clock> event_clock(std::string_view time, std::string_view meridiem) {
  auto c = parse_clock(time, false);
  if (!c) return std::nullopt;
  if (meridiem.empty()) return c;
  if (c->hour < 1 || c->hour > 12) return std::nullopt;
  bool pm = meridiem == "PM" || meridiem == "pm";
  c->hour = (c->hour % 12) + (pm ? 12 : 0);
  return c;
}

struct Cell {
  std::string_view text;
  std::size_t end = 0;  // offset one past the cell in the line
};

// Cells split by tabs (tab mode) or by runs of two or more blanks (space mode).
std::vector<Cell> split_cells(std::string_view line, bool tabs) {
  std::vector<Cell> cells;
  std::size_t start = 0;
  std::size_t i = 0;
  auto flush = [&](std::size_t end) {
    std::string_view t = detail::trim(line.substr(start, end - start));
    if (!t.empty()) {
      std::size_t cell_end = static_cast<std::size_t>(t.data() - line.data()) + t.size();
      cells.push_back({t, cell_end});
    }
  };
  while (i < line.size()) {
    bool split = false;
    std::size_t run_end = i;
    if (tabs) {
      split = line[i] == '\t';
      run_end = i + 1;
    } else if (line[i] == '\t' || line[i] == ' ') {
      while (run_end < line.size() && (line[run_end] == ' ' || line[run_end] == '\t')) ++run_end;
      split = run_end - i >= 2 || line[i] == '\t';
    }
    if (split) {
      flush(i);
      start = run_end;
      i = run_end;
    } else {
      ++i;
    }
  }
  flush(line.size());
  return cells;
}

struct EventHeader {
  EventLogEntry entry;
};

std::string remainder_after(std::string_view line, std::size_t offset) {
  return std::string(detail::trim(line.substr(std::min(offset, line.size()))));
}

std::optional<EventLogEntry> parse_event_columns(std::string_view line, bool tabs) {
  auto cells = split_cells(line, tabs);
  std::size_t i = 0;
  auto next = [&]() -> const Cell* { return i < cells.size() ? &cells[i++] : nullptr; };

  const Cell* date_cell = next();
  const Cell* time_cell = next();
  if (!date_cell || !time_cell) return std::nullopt;
  auto date = parse_us_date(date_cell->text);
  if (!date) return std::nullopt;

  std::string_view time_text = time_cell->text;
  std::string_view meridiem;
  if (auto sp = time_text.find(' '); sp != std::string_view::npos) {
    meridiem = detail::trim(time_text.substr(sp + 1));
    time_text = time_text.substr(0, sp);
    if (!is_meridiem(meridiem)) return std::nullopt;
  } else if (i < cells.size() && is_meridiem(cells[i].text)) {
    meridiem = cells[i++].text;
  }
  auto clock = event_clock(time_text, meridiem);
  if (!clock) return std::nullopt;

  std::array<const Cell*, 6> fixed{};
  for (auto& slot : fixed) {
    slot = next();
    if (!slot) return std::nullopt;
  }
  auto id = detail::parse_unsigned<std::uint32_t>(fixed[3]->text);
  if (!id) return std::nullopt;

  EventLogEntry e;
  e.ts = *make_ts(*date, *clock);
  e.source = std::string(fixed[0]->text);
  e.event_type = std::string(fixed[1]->text);
  e.category = std::string(fixed[2]->text);
  e.event_id = *id;
  e.user = std::string(fixed[4]->text);
  e.computer = std::string(fixed[5]->text);
  e.message = remainder_after(line, fixed[5]->end);
  return e;
}

std::string join_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

// Single-space export: the event id is the first all-digit token after the
// time, the event type is located by vocabulary (rightmost match), and the
// user column is widened for "NT AUTHORITY\..." style names.
std::optional<EventLogEntry> parse_event_tokens(std::string_view line, std::string& reason) {
  auto tokens = detail::split_ws(line);
  if (tokens.size() < 2) {
    reason = "record line too short";
    return std::nullopt;
  }
  auto date = parse_us_date(tokens[0].text);
  if (!date) {
    reason = "invalid date '" + std::string(tokens[0].text) + "'";
    return std::nullopt;
  }
  std::size_t idx = 2;
  std::string_view meridiem;
  if (tokens.size() > 2 && is_meridiem(tokens[2].text)) {
    meridiem = tokens[2].text;
    idx = 3;
  }
  auto clock = event_clock(tokens[1].text, meridiem);
  if (!clock) {
    reason = "invalid time '" + std::string(tokens[1].text) + (meridiem.empty() ? "" : " " + std::string(meridiem)) +
             "'";
    return std::nullopt;
  }

  std::size_t id_pos = tokens.size();
  for (std::size_t k = idx + 3; k < tokens.size(); ++k) {
    if (detail::parse_unsigned<std::uint32_t>(tokens[k].text)) {
      id_pos = k;
      break;
    }
  }
  if (id_pos == tokens.size()) {
    reason = "no event id column found";
    return std::nullopt;
  }

  // Event type: rightmost vocabulary match leaving a non-empty source and category.
  std::size_t type_begin = 0;
  std::size_t type_end = 0;
  for (std::size_t pos = id_pos - 2; pos > idx; --pos) {
    std::string_view t = tokens[pos].text;
    if (t == "Error" || t == "Warning" || t == "Information") {
      type_begin = pos;
      type_end = pos + 1;
      break;
    }
    if ((t == "Success" || t == "Failure") && pos + 1 <= id_pos - 2 && tokens[pos + 1].text == "Audit") {
      type_begin = pos;
      type_end = pos + 2;
      break;
    }
  }
  if (type_end == 0) {
    reason = "cannot locate the event type column";
    return std::nullopt;
  }

  std::size_t u = id_pos + 1;
  if (u >= tokens.size()) {
    reason = "missing user and computer columns";
    return std::nullopt;
  }
  auto has_backslash = [](std::string_view s) { return s.find('\\') != std::string_view::npos; };
  std::size_t user_end = u + 1;
  if (tokens[u].text != "N/A" && !has_backslash(tokens[u].text) && u + 1 < tokens.size() &&
      has_backslash(tokens[u + 1].text)) {
    user_end = u + 2;
  }
  std::string_view last_user = tokens[user_end - 1].text;
  if (user_end < tokens.size() && tokens[user_end].text == "SERVICE" &&
      (last_user.ends_with("\\NETWORK") || last_user.ends_with("\\LOCAL"))) {
    ++user_end;
  }
  if (user_end >= tokens.size()) {
    reason = "missing computer column";
    return std::nullopt;
  }

  EventLogEntry e;
  e.ts = *make_ts(*date, *clock);
  e.source = join_tokens(tokens, idx, type_begin);
  e.event_type = join_tokens(tokens, type_begin, type_end);
  e.category = join_tokens(tokens, type_end, id_pos);
  e.event_id = *detail::parse_unsigned<std::uint32_t>(tokens[id_pos].text);
  e.user = join_tokens(tokens, u, user_end);
  e.computer = std::string(tokens[user_end].text);
  e.message = remainder_after(line, tokens[user_end].offset + tokens[user_end].text.size());
  return e;
}

std::optional<EventLogEntry> parse_event_header(std::string_view line, std::string& reason) {
  if (line.find('\t') != std::string_view::npos) {
    if (auto e = parse_event_columns(line, true)) return e;
  }
  if (line.find("  ") != std::string_view::npos) {
    if (auto e = parse_event_columns(line, false)) return e;
  }
  return parse_event_tokens(line, reason);
}

// ---------------------------------------------------------------------------
// IDS alert blocks

struct BlockLine {
  std::size_t line_no;
  std::string_view text;
};

bool parse_sig_header(std::string_view t, IdsAlert& alert) {
  t = detail::trim(t.substr(4));  // after "[**]"
  if (t.empty() || t.front() != '[') return false;
  auto close = t.find(']');
  if (close == std::string_view::npos) return false;
  std::string_view triple = t.substr(1, close - 1);
  auto c1 = triple.find(':');
  if (c1 == std::string_view::npos) return false;
  auto c2 = triple.find(':', c1 + 1);
  if (c2 == std::string_view::npos) return false;
  auto g = detail::parse_unsigned<std::uint32_t>(triple.substr(0, c1));
  auto s = detail::parse_unsigned<std::uint32_t>(triple.substr(c1 + 1, c2 - c1 - 1));
  auto r = detail::parse_unsigned<std::uint32_t>(triple.substr(c2 + 1));
  if (!g || !s || !r) return false;
  std::string_view rest = t.substr(close + 1);
  rest = detail::trim(rest);
  if (!rest.ends_with("[**]")) return false;
  rest.remove_suffix(4);
  alert.gid = *g;
  alert.sid = *s;
  alert.rev = *r;
  alert.message = std::string(detail::trim(rest));
  return true;
}

// "[Classification: ...] [Priority: n]" in any combination.
bool parse_priority_line(std::string_view t, IdsAlert& alert, bool& saw_priority, bool& saw_class) {
  std::optional<std::uint32_t> priority;
  std::optional<std::string> classification;
  while (!t.empty()) {
    if (t.front() != '[') return false;
    auto close = t.find(']');
    if (close == std::string_view::npos) return false;
    std::string_view inner = t.substr(1, close - 1);
    auto colon = inner.find(':');
    if (colon == std::string_view::npos) return false;
    std::string_view name = inner.substr(0, colon);
    std::string_view value = detail::trim(inner.substr(colon + 1));
    if (name == "Priority" && !priority) {
      priority = detail::parse_unsigned<std::uint32_t>(value);
      if (!priority) return false;
    } else if (name == "Classification" && !classification && !value.empty()) {
      classification = std::string(value);
    } else {
      return false;
    }
    t = detail::trim(t.substr(close + 1));
  }
  if ((priority && saw_priority) || (classification && saw_class)) return false;
  if (priority) {
    alert.priority = *priority;
    saw_priority = true;
  }
  if (classification) {
    alert.header_fields[std::string(ids_keys::kClassification)] = *classification;
    saw_class = true;
  }
  return priority || classification;
}

bool parse_endpoint(std::string_view text, IpAddress& ip, IdsAlert& alert, std::string_view port_key) {
  std::string_view addr = text;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    auto port = Port::parse(text.substr(colon + 1));
    if (!port) return false;
    alert.header_fields[std::string(port_key)] = std::to_string(port->value);
    addr = text.substr(0, colon);
  }
  auto parsed = IpAddress::parse(addr);
  if (!parsed) return false;
  ip = *parsed;
  return true;
}

// "MM/DD-HH:MM:SS.ffffff src[:port] -> dst[:port]"
bool parse_arrow_line(std::string_view t, int year, IdsAlert& alert) {
  auto tokens = detail::split_ws(t);
  if (tokens.size() != 4 || tokens[2].text != "->") return false;
  std::string_view stamp = tokens[0].text;
  auto dash = stamp.find('-');
  if (dash == std::string_view::npos) return false;
  std::string_view md = stamp.substr(0, dash);
  auto slash = md.find('/');
  if (slash == std::string_view::npos) return false;
  auto month = detail::parse_unsigned<unsigned>(md.substr(0, slash));
  auto day = detail::parse_unsigned<unsigned>(md.substr(slash + 1));
  if (!month || !day || md.size() > 5) return false;
  auto date = Date::make(year, *month, *day);
  if (!date) return false;
  auto clock = parse_clock(stamp.substr(dash + 1), true);
  if (!clock) return false;
  alert.ts = *make_ts(*date, *clock);
  return parse_endpoint(tokens[1].text, alert.src_ip, alert, ids_keys::kSrcPort) &&
         parse_endpoint(tokens[3].text, alert.dst_ip, alert, ids_keys::kDstPort);
}

bool is_flag_token(std::string_view t) {
  bool letter = false;
  for (char c : t) {
    if (c >= 'A' && c <= 'Z') {
      letter = true;
    } else if (!detail::is_digit(c)) {
      return false;
    }
  }
  return letter;
}

// Lines made only of KEY:VALUE pairs and bare upper-case flags (e.g. "DF").
bool parse_field_line(std::string_view t, IdsAlert& alert) {
  auto tokens = detail::split_ws(t);
  if (tokens.empty()) return false;
  for (const auto& tok : tokens) {
    auto colon = tok.text.find(':');
    if (colon == std::string_view::npos) {
      if (!is_flag_token(tok.text)) return false;
      continue;
    }
    std::string_view key = tok.text.substr(0, colon);
    if (key.empty() || colon + 1 >= tok.text.size() || ids_keys::is_reserved(key)) return false;
    for (char c : key) {
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || detail::is_digit(c) || c == '_';
      if (!ok) return false;
    }
  }
  for (const auto& tok : tokens) {
    auto colon = tok.text.find(':');
    if (colon == std::string_view::npos) {
      auto& flags = alert.header_fields[std::string(ids_keys::kFlags)];
      if (!flags.empty()) flags += ' ';
      flags += tok.text;
    } else {
      alert.header_fields[std::string(tok.text.substr(0, colon))] = std::string(tok.text.substr(colon + 1));
    }
  }
  return true;
}

std::optional<IdsAlert> parse_alert_block(const std::vector<BlockLine>& block, int year, std::string& reason) {
  IdsAlert alert;
  bool saw_header = false;
  bool saw_arrow = false;
  bool saw_priority = false;
  bool saw_class = false;
  auto add_raw = [&](std::string_view text) {
    auto& raw = alert.header_fields[std::string(ids_keys::kRaw)];
    if (!raw.empty()) raw += '\n';
    raw += text;
  };

  for (const auto& bl : block) {
    std::string_view t = detail::trim(bl.text);
    if (detail::starts_with(t, "[**]")) {
      if (saw_header) {
        add_raw(bl.text);
        continue;
      }
      if (!parse_sig_header(t, alert)) {
        reason = "malformed alert header";
        return std::nullopt;
      }
      saw_header = true;
    } else if (!t.empty() && t.front() == '[') {
      if (!parse_priority_line(t, alert, saw_priority, saw_class)) add_raw(bl.text);
    } else if (!saw_arrow && t.find("->") != std::string_view::npos) {
      if (!parse_arrow_line(t, year, alert)) {
        reason = "malformed timestamp/address line";
        return std::nullopt;
      }
      saw_arrow = true;
    } else if (saw_arrow && t.find("->") != std::string_view::npos) {
      add_raw(bl.text);
    } else if (!parse_field_line(t, alert)) {
      add_raw(bl.text);
    }
  }
  if (!saw_header) {
    reason = "alert block has no [**] header line";
    return std::nullopt;
  }
  if (!saw_arrow) {
    reason = "alert block has no timestamp/address line";
    return std::nullopt;
  }
  return alert;
}

SourceRef make_source(std::size_t first_line, const std::vector<BlockLine>& lines) {
  SourceRef ref;
  ref.first_line = first_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) ref.text += '\n';
    ref.text += lines[i].text;
  }
  return ref;
}

}  // namespace

ParseOutcome<FirewallEntry> parse_firewall_log(std::string_view bytes) {
  ParseOutcome<FirewallEntry> out;
  std::string text = decode_log_text(bytes);
  auto lines = split_lines(text);
  out.lines.total = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::size_t line_no = i + 1;
    std::string_view t = detail::trim(line);
    if (t.empty()) {
      ++out.lines.skipped;
      continue;
    }
    if (t.front() == '#') {
      if (detail::starts_with(t, "#Fields:")) {
        if (auto bad = check_fields_header(t)) {
          reject(out, line_no, line, *bad);
          continue;
        }
      }
      ++out.lines.skipped;
      continue;
    }
    FirewallEntry entry;
    if (auto bad = parse_firewall_line(line, entry)) {
      reject(out, line_no, line, *bad);
      continue;
    }
    entry.source = {line_no, std::string(line)};
    out.records.push_back(std::move(entry));
    ++out.lines.record;
  }
  return out;
}

ParseOutcome<EventLogEntry> parse_event_log(std::string_view bytes) {
  ParseOutcome<EventLogEntry> out;
  std::string text = decode_log_text(bytes);
  auto lines = split_lines(text);
  out.lines.total = lines.size();

  std::optional<EventLogEntry> current;
  std::vector<BlockLine> current_lines;
  std::optional<std::size_t> rejected_record;  // first line of a record we could not parse

  auto finish = [&]() {
    if (!current) return;
    if (detail::is_blank(current->message)) {
      std::size_t first = current_lines.front().line_no;
      for (std::size_t k = 0; k < current_lines.size(); ++k) {
        reject(out, current_lines[k].line_no, current_lines[k].text,
               k == 0 ? "event record has an empty message"
                      : "part of rejected record starting at line " + std::to_string(first));
      }
    } else {
      current->source_ref = make_source(current_lines.front().line_no, current_lines);
      out.records.push_back(std::move(*current));
      out.lines.record += current_lines.size();
    }
    current.reset();
    current_lines.clear();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::size_t line_no = i + 1;
    if (detail::is_blank(line)) {
      ++out.lines.skipped;
      continue;
    }
    if (starts_with_date_token(line)) {
      finish();
      std::string reason;
      if (auto entry = parse_event_header(line, reason)) {
        current = std::move(*entry);
        current_lines.push_back({line_no, line});
        rejected_record.reset();
      } else {
        reject(out, line_no, line, reason);
        rejected_record = line_no;
      }
      continue;
    }
    if (current) {
      if (current->message.empty()) {
        current->message = std::string(line);
      } else {
        current->message += ' ';
        current->message += line;
      }
      current_lines.push_back({line_no, line});
    } else if (rejected_record) {
      reject(out, line_no, line, "part of rejected record starting at line " + std::to_string(*rejected_record));
    } else {
      reject(out, line_no, line, "continuation line before any record");
    }
  }
  finish();
  return out;
}

ParseOutcome<IdsAlert> parse_ids_alert_log(std::string_view bytes, int assumed_year) {
  ParseOutcome<IdsAlert> out;
  std::string text = decode_log_text(bytes);
  auto lines = split_lines(text);
  out.lines.total = lines.size();

  std::vector<BlockLine> block;
  auto flush = [&]() {
    if (block.empty()) return;
    std::string reason;
    if (auto alert = parse_alert_block(block, assumed_year, reason)) {
      alert->source = make_source(block.front().line_no, block);
      out.records.push_back(std::move(*alert));
      out.lines.record += block.size();
    } else {
      std::size_t first = block.front().line_no;
      for (std::size_t k = 0; k < block.size(); ++k) {
        reject(out, block[k].line_no, block[k].text,
               k == 0 ? reason : "part of rejected alert block starting at line " + std::to_string(first));
      }
    }
    block.clear();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_blank(lines[i])) {
      flush();
      ++out.lines.skipped;
      continue;
    }
    block.push_back({i + 1, lines[i]});
  }
  flush();
  return out;
}

}  // namespace blastertrace
