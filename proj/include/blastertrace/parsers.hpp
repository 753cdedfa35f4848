#pragma once

// Tolerant parsers for the three on-disk log formats. Parsing never throws on
// bad input; every line ends up as part of a record, as a skipped
// header/comment/blank line, or as an issue.

#include <string>
#include <string_view>
#include <vector>

#include "blastertrace/log_model.hpp"

namespace blastertrace {

struct ParseIssue {
  std::size_t line = 0;  // 1-based
  std::string raw_line;
  std::string reason;
};

struct LineAccounting {
  std::size_t total = 0;
  std::size_t record = 0;    // consumed by a record (including continuation lines)
  std::size_t skipped = 0;   // blank, comment or accepted header
  std::size_t rejected = 0;  // one ParseIssue each

  bool balanced() const { return record + skipped + rejected == total; }
};

template <class T>
struct ParseOutcome {
  std::vector<T> records;  // file order
  std::vector<ParseIssue> issues;
  LineAccounting lines;
};

/// Windows personal firewall log (pfirewall.log). Columns are positional:
/// date time action protocol src-ip dst-ip src-port dst-port [extras...].
ParseOutcome<FirewallEntry> parse_firewall_log(std::string_view bytes);

/// Event-viewer text export. A record starts on a line whose first token is an
/// M/D/YYYY date; following non-date lines continue the record's message.
ParseOutcome<EventLogEntry> parse_event_log(std::string_view bytes);

/// IDS "full" alert file: blank-line separated blocks. The wire timestamp has
/// no year, so the caller supplies one.
ParseOutcome<IdsAlert> parse_ids_alert_log(std::string_view bytes, int assumed_year);

}  // namespace blastertrace
