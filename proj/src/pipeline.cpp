#include "blastertrace/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "blastertrace/attacker_trace.hpp"
#include "blastertrace/kv_config.hpp"
#include "blastertrace/parsers.hpp"
#include "blastertrace/victim_trace.hpp"

namespace blastertrace {

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Found: return "found";
    case StageStatus::Absent: return "absent";
    case StageStatus::Unverified: return "unverified";
  }
  return "unverified";
}

std::string_view to_string(ExploitStatus s) {
  switch (s) {
    case ExploitStatus::Established: return "established";
    case ExploitStatus::Attempted: return "attempted";
    case ExploitStatus::Absent: return "absent";
  }
  return "absent";
}

std::string_view to_string(AttackerSide s) { return s == AttackerSide::Verified ? "verified" : "unverified"; }

std::size_t TraceReport::candidate_count() const {
  std::size_t n = 0;
  for (const auto& section : attackers) n += section.candidates.size();
  return n;
}

std::vector<const CandidateReport*> TraceReport::all_candidates() const {
  std::vector<const CandidateReport*> out;
  for (const auto& section : attackers) {
    for (const auto& c : section.candidates) out.push_back(&c);
  }
  return out;
}

FileReader disk_reader(std::filesystem::path base_dir) {
  return [base = std::move(base_dir)](const std::string& path) -> std::optional<std::string> {
    std::filesystem::path p(path);
    if (p.is_relative()) p = base / p;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) return std::nullopt;
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
  };
}

namespace {

struct HostData {
  std::optional<ParseOutcome<FirewallEntry>> firewall;
  std::optional<ParseOutcome<EventLogEntry>> security;
  std::optional<ParseOutcome<EventLogEntry>> system;
  std::optional<ParseOutcome<EventLogEntry>> application;

  // Skew-adjusted copies, used when the host plays the attacker.
  std::vector<FirewallEntry> firewall_shifted;
  std::vector<EventLogEntry> security_shifted;
};

std::string read_or_throw(const FileReader& reader, const std::string& path) {
  auto text = reader(path);
  if (!text) throw InputError(path);
  return std::move(*text);
}

template <class T>
std::vector<T> shifted_copy(const std::vector<T>& records, Duration skew) {
  std::vector<T> out = records;
  if (skew.count() != 0) {
    for (auto& r : out) r.ts = r.ts.shifted(skew);
  }
  return out;
}

template <class T>
std::span<const T> records_or_empty(const std::optional<ParseOutcome<T>>& outcome) {
  if (!outcome) return {};
  return outcome->records;
}

class Tracer {
 public:
  Tracer(const LogCorpus& corpus, const BlasterFingerprint& fp, const TraceOptions& options, const FileReader& reader)
      : corpus_(corpus), fp_(fp), options_(options) {
    for (const auto& [label, host] : corpus.hosts) {
      HostData data;
      if (host.firewall) data.firewall = parse_firewall_log(read_or_throw(reader, *host.firewall));
      if (host.security) data.security = parse_event_log(read_or_throw(reader, *host.security));
      if (host.system) data.system = parse_event_log(read_or_throw(reader, *host.system));
      if (host.application) data.application = parse_event_log(read_or_throw(reader, *host.application));
      if (data.firewall) data.firewall_shifted = shifted_copy(data.firewall->records, options.skew);
      if (data.security) data.security_shifted = shifted_copy(data.security->records, options.skew);
      hosts_.emplace(label, std::move(data));
    }
    if (corpus.ids_alert) ids_text_ = read_or_throw(reader, *corpus.ids_alert);
  }

  std::optional<std::string> victim_host(const IpAddress& ip) const {
    for (const auto& [label, host] : corpus_.hosts) {
      if (host.role == HostRole::DeclaredVictim && host.firewall && host.ip == ip) return label;
    }
    for (const auto& [label, host] : corpus_.hosts) {
      if (host.role != HostRole::DeclaredVictim || !host.firewall || host.ip) continue;
      const auto& records = hosts_.at(label).firewall->records;
      if (std::any_of(records.begin(), records.end(), [&](const FirewallEntry& e) { return e.dst_ip == ip; })) {
        return label;
      }
    }
    return std::nullopt;
  }

  // Declared address first, then a non-victim host whose firewall log shows the
  // address as a source, then the role hint.
  std::optional<std::string> attacker_host(const IpAddress& ip, const std::string& victim_label) const {
    for (const auto& [label, host] : corpus_.hosts) {
      if (label != victim_label && host.ip == ip) return label;
    }
    auto eligible = [&](const std::string& label, const HostLogs& host) {
      return label != victim_label && host.role != HostRole::DeclaredVictim && !host.ip;
    };
    for (HostRole role : {HostRole::SuspectedAttacker, HostRole::Unknown}) {
      for (const auto& [label, host] : corpus_.hosts) {
        if (host.role != role || !eligible(label, host) || !host.firewall) continue;
        const auto& records = hosts_.at(label).firewall->records;
        if (std::any_of(records.begin(), records.end(), [&](const FirewallEntry& e) { return e.src_ip == ip; })) {
          return label;
        }
      }
    }
    for (const auto& [label, host] : corpus_.hosts) {
      if (host.role == HostRole::SuspectedAttacker && eligible(label, host)) return label;
    }
    return std::nullopt;
  }

  const ParseOutcome<IdsAlert>& ids_for_year(int year) {
    auto it = ids_by_year_.find(year);
    if (it == ids_by_year_.end()) {
      auto outcome = parse_ids_alert_log(*ids_text_, year);
      for (auto& a : outcome.records) a.ts = a.ts.shifted(options_.skew);
      it = ids_by_year_.emplace(year, std::move(outcome)).first;
    }
    return it->second;
  }

  std::vector<FileSummary> file_summaries(int ids_year) {
    std::vector<FileSummary> out;
    for (const auto& [label, host] : corpus_.hosts) {
      const HostData& data = hosts_.at(label);
      auto add = [&](LogKind kind, const auto& outcome) {
        if (!outcome) return;
        out.push_back({label, kind, *host.path(kind), outcome->records.size(), outcome->issues.size()});
      };
      add(LogKind::Firewall, data.firewall);
      add(LogKind::Security, data.security);
      add(LogKind::System, data.system);
      add(LogKind::Application, data.application);
    }
    if (ids_text_) {
      const auto& ids = ids_for_year(ids_year);
      out.push_back({"", LogKind::IdsAlert, *corpus_.ids_alert, ids.records.size(), ids.issues.size()});
    }
    return out;
  }

  const HostData& host_data(const std::string& label) const { return hosts_.at(label); }

  CandidateReport trace_candidate(const std::string& victim_label, TraceStep seed) {
    const HostLogs& victim = corpus_.hosts.at(victim_label);
    const HostData& vdata = hosts_.at(victim_label);

    CandidateReport report;
    report.victim_host = victim_label;
    for (Stage s : kAllStages) report.stages[s] = StageStatus::Unverified;

    TraceContext ctx = seed.context;
    std::vector<Finding> findings;
    auto take = [&](std::vector<Finding>& src, const std::string& path) {
      for (auto& f : src) {
        f.log = path;
        findings.push_back(std::move(f));
      }
    };
    take(seed.findings, *victim.firewall);
    report.stages[Stage::FwAttempt] = StageStatus::Found;
    report.stages[Stage::FwExploit] = ctx.t_fw2 ? StageStatus::Found : StageStatus::Absent;

    if (ctx.t_fw2) {
      TraceStep events = trace_victim_events(records_or_empty(vdata.application), records_or_empty(vdata.system),
                                             records_or_empty(vdata.security), ctx, fp_);
      ctx = events.context;
      for (auto& f : events.findings) {
        const auto& path = f.stage == Stage::AppError   ? victim.application
                           : f.stage == Stage::RpcCrash ? victim.system
                                                        : victim.security;
        f.log = path.value_or("");
        findings.push_back(std::move(f));
      }
      const std::pair<Stage, bool> chain[] = {{Stage::AppError, victim.application.has_value()},
                                              {Stage::RpcCrash, victim.system.has_value()},
                                              {Stage::Shutdown, victim.security.has_value()}};
      const bool found[] = {ctx.t_app1.has_value(), ctx.t_sys.has_value(), ctx.t_sec.has_value()};
      bool reachable = true;
      for (std::size_t i = 0; i < 3; ++i) {
        auto [stage, present] = chain[i];
        if (!reachable || !present) {
          report.stages[stage] = StageStatus::Unverified;
          reachable = false;
        } else if (found[i]) {
          report.stages[stage] = StageStatus::Found;
        } else {
          report.stages[stage] = StageStatus::Absent;
          reachable = false;
        }
      }
    }

    report.attacker_host = attacker_host(*ctx.attacker_ip, victim_label);
    if (report.attacker_host) {
      const HostLogs& attacker = corpus_.hosts.at(*report.attacker_host);
      const HostData& adata = hosts_.at(*report.attacker_host);
      if (attacker.firewall) {
        TraceStep fw = trace_attacker_firewall(adata.firewall_shifted, ctx, fp_);
        ctx = fw.context;
        take(fw.findings, *attacker.firewall);
        report.stages[Stage::AttackerFwAttempt] = ctx.t_fw1_y ? StageStatus::Found : StageStatus::Absent;
        if (ctx.t_fw1_y && ctx.src_port_exploit) {
          report.stages[Stage::AttackerFwExploit] = ctx.t_fw2_y ? StageStatus::Found : StageStatus::Absent;
        }
      }
      if (attacker.security && ctx.t_fw1_y) {
        TraceStep sec = trace_attacker_security(adata.security_shifted, ctx, fp_, options_.window);
        ctx = sec.context;
        bool shutdown_seen = std::any_of(sec.findings.begin(), sec.findings.end(),
                                         [](const Finding& f) { return f.stage == Stage::AttackerShutdown; });
        take(sec.findings, *attacker.security);
        report.stages[Stage::AttackerProcCreated] = ctx.t_sec_y ? StageStatus::Found : StageStatus::Absent;
        if (shutdown_seen) {
          report.stages[Stage::AttackerShutdown] = StageStatus::Found;
        } else if (ctx.t_fw2_y) {
          report.stages[Stage::AttackerShutdown] = StageStatus::Absent;
        }
      }
    }

    IdsVerdict ids = IdsVerdict::None;
    if (ids_text_) {
      IdsResult result = trace_ids(ids_for_year(ctx.date_fw->year).records, ctx, options_.slack, fp_);
      ctx = result.context;
      ids = result.verdict;
      take(result.findings, *corpus_.ids_alert);
      report.stages[Stage::IdsCorroboration] = ids == IdsVerdict::None ? StageStatus::Absent : StageStatus::Found;
    }

    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
      if (a.ts != b.ts) return a.ts < b.ts;
      return static_cast<int>(a.stage) < static_cast<int>(b.stage);
    });

    report.verdict.attacker_ip = *ctx.attacker_ip;
    report.verdict.victim_ip = ctx.victim_ip;
    report.verdict.attempt_ts = *ctx.t_fw1;
    if (!ctx.t_fw2) {
      report.verdict.exploit_status = ExploitStatus::Absent;
    } else {
      report.verdict.exploit_status = ctx.exploit_action && ctx.exploit_action->kind() == FirewallAction::Kind::Open
                                          ? ExploitStatus::Established
                                          : ExploitStatus::Attempted;
    }
    report.verdict.attacker_side = ctx.t_fw1_y ? AttackerSide::Verified : AttackerSide::Unverified;
    report.verdict.ids = ids;
    report.context = ctx;
    report.findings = std::move(findings);
    return report;
  }

 private:
  const LogCorpus& corpus_;
  const BlasterFingerprint& fp_;
  const TraceOptions& options_;
  std::map<std::string, HostData> hosts_;
  std::optional<std::string> ids_text_;
  std::map<int, ParseOutcome<IdsAlert>> ids_by_year_;
};

}  // namespace

TraceReport run_full_trace(const LogCorpus& corpus, std::span<const IpAddress> victim_ips,
                           const BlasterFingerprint& fp, const TraceOptions& options, const FileReader& reader) {
  corpus.validate();
  fp.validate();
  if (victim_ips.empty()) throw ConfigError("victim", "at least one victim address is required");

  Tracer tracer(corpus, fp, options, reader);

  TraceReport report;
  report.options = options;
  report.fingerprint = fp;

  std::map<IpAddress, std::vector<CandidateReport>> by_attacker;
  std::optional<int> first_year;
  for (const IpAddress& ip : victim_ips) {
    if (std::find(report.victims_requested.begin(), report.victims_requested.end(), ip) !=
        report.victims_requested.end()) {
      continue;
    }
    report.victims_requested.push_back(ip);
    VictimSummary summary{ip, tracer.victim_host(ip), 0};
    if (summary.host) {
      const auto& records = tracer.host_data(*summary.host).firewall->records;
      if (!first_year && !records.empty()) first_year = records.front().ts.date.year;
      for (TraceStep& seed : trace_victim_firewall(records, ip, fp)) {
        CandidateReport c = tracer.trace_candidate(*summary.host, std::move(seed));
        by_attacker[c.verdict.attacker_ip].push_back(std::move(c));
        ++summary.candidates;
      }
    }
    report.victims.push_back(summary);
  }

  // The IDS file summary is parsed with the year of the first correlated trace.
  int ids_year = first_year.value_or(1970);
  for (const auto& [ip, candidates] : by_attacker) {
    ids_year = candidates.front().context.date_fw->year;
    break;
  }
  report.files = tracer.file_summaries(ids_year);

  for (auto& [ip, candidates] : by_attacker) report.attackers.push_back({ip, std::move(candidates)});
  return report;
}

}  // namespace blastertrace
