#pragma once

// JSON and plain-text renderings. The JSON layout is documented in
// docs/report.schema.json; the text form carries the same information.

#include <string>
#include <string_view>

#include "json.hpp"

#include "blastertrace/fingerprint.hpp"
#include "blastertrace/log_model.hpp"
#include "blastertrace/parsers.hpp"
#include "blastertrace/pipeline.hpp"

namespace blastertrace {

using Json = nlohmann::ordered_json;

Json to_json(const FirewallEntry& entry);
Json to_json(const EventLogEntry& entry);
Json to_json(const IdsAlert& alert);
Json to_json(const BlasterFingerprint& fp);
Json to_json(const TraceContext& ctx);
Json to_json(const Finding& finding);
Json to_json(const TraceReport& report);

template <class T>
Json outcome_to_json(const ParseOutcome<T>& outcome, std::string_view kind) {
  Json j;
  j["kind"] = kind;
  j["lines"] = {{"total", outcome.lines.total},
                {"record", outcome.lines.record},
                {"skipped", outcome.lines.skipped},
                {"rejected", outcome.lines.rejected}};
  Json records = Json::array();
  for (const auto& r : outcome.records) records.push_back(to_json(r));
  j["records"] = std::move(records);
  Json issues = Json::array();
  for (const auto& i : outcome.issues) issues.push_back({{"line", i.line}, {"reason", i.reason}, {"raw", i.raw_line}});
  j["issues"] = std::move(issues);
  return j;
}

std::string render_report_text(const TraceReport& report);

/// Pretty-printed JSON with a trailing newline; invalid UTF-8 is replaced.
std::string dump_json(const Json& j);

}  // namespace blastertrace
