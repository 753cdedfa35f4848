#include "blastertrace/report_format.hpp"

#include <sstream>

namespace blastertrace {

namespace {

Json ts_or_null(const std::optional<Timestamp>& ts) { return ts ? Json(ts->to_string()) : Json(nullptr); }

Json seconds(Duration d) {
  if (d.count() % Timestamp::kMicrosPerSecond == 0) return d.count() / Timestamp::kMicrosPerSecond;
  return static_cast<double>(d.count()) / static_cast<double>(Timestamp::kMicrosPerSecond);
}

std::string seconds_text(Duration d) { return seconds(d).dump(); }

}  // namespace

Json to_json(const FirewallEntry& e) {
  Json j;
  j["line"] = e.source.first_line;
  j["ts"] = e.ts.to_string();
  j["action"] = e.action.to_string();
  j["protocol"] = e.protocol;
  j["src_ip"] = e.src_ip.to_string();
  j["dst_ip"] = e.dst_ip.to_string();
  j["src_port"] = e.src_port_absent ? Json(nullptr) : Json(e.src_port.value);
  j["dst_port"] = e.dst_port_absent ? Json(nullptr) : Json(e.dst_port.value);
  j["extras"] = e.extras;
  return j;
}

Json to_json(const EventLogEntry& e) {
  Json j;
  j["line"] = e.source_ref.first_line;
  j["ts"] = e.ts.to_string();
  j["source"] = e.source;
  j["event_type"] = e.event_type;
  j["category"] = e.category;
  j["event_id"] = e.event_id;
  j["user"] = e.user;
  j["computer"] = e.computer;
  j["message"] = e.message;
  return j;
}

Json to_json(const IdsAlert& a) {
  Json j;
  j["line"] = a.source.first_line;
  j["gid"] = a.gid;
  j["sid"] = a.sid;
  j["rev"] = a.rev;
  j["message"] = a.message;
  j["priority"] = a.priority;
  j["ts"] = a.ts.date.to_string() + " " + a.ts.time_string(true);
  j["src_ip"] = a.src_ip.to_string();
  j["dst_ip"] = a.dst_ip.to_string();
  Json fields = Json::object();
  for (const auto& [k, v] : a.header_fields) fields[k] = v;
  j["header_fields"] = std::move(fields);
  return j;
}

Json to_json(const BlasterFingerprint& fp) {
  Json j;
  j["attempt_port"] = fp.attempt_port.value;
  j["exploit_port"] = fp.exploit_port.value;
  j["tftp_port"] = fp.tftp_port.value;
  j["victim_attempt_action"] = fp.victim_attempt_action.to_string();
  Json actions = Json::array();
  for (const auto& a : fp.victim_exploit_actions) actions.push_back(a.to_string());
  j["victim_exploit_actions"] = std::move(actions);
  j["attacker_action"] = fp.attacker_action.to_string();
  j["protocol"] = fp.protocol;
  j["msg_app_error"] = fp.msg_app_error;
  j["msg_rpc_crash"] = fp.msg_rpc_crash;
  j["msg_shutdown"] = fp.msg_shutdown;
  j["msg_proc_created"] = fp.msg_proc_created;
  j["proc_image_hint"] = fp.proc_image_hint;
  j["ids_alert_hint"] = fp.ids_alert_hint;
  j["case_sensitive"] = fp.case_sensitive;
  return j;
}

Json to_json(const TraceContext& c) {
  Json j;
  j["victim_ip"] = c.victim_ip.to_string();
  j["dest_ip"] = c.dest_ip.to_string();
  j["attacker_ip"] = c.attacker_ip ? Json(c.attacker_ip->to_string()) : Json(nullptr);
  j["src_port_attempt"] = c.src_port_attempt ? Json(c.src_port_attempt->value) : Json(nullptr);
  j["src_port_exploit"] = c.src_port_exploit ? Json(c.src_port_exploit->value) : Json(nullptr);
  j["date_fw"] = c.date_fw ? Json(c.date_fw->to_string()) : Json(nullptr);
  j["t_fw1"] = ts_or_null(c.t_fw1);
  j["t_fw2"] = ts_or_null(c.t_fw2);
  j["exploit_action"] = c.exploit_action ? Json(c.exploit_action->to_string()) : Json(nullptr);
  j["t_app1"] = ts_or_null(c.t_app1);
  j["t_sys"] = ts_or_null(c.t_sys);
  j["t_sec"] = ts_or_null(c.t_sec);
  j["t_fw1_y"] = ts_or_null(c.t_fw1_y);
  j["t_fw2_y"] = ts_or_null(c.t_fw2_y);
  j["t_sec_y"] = ts_or_null(c.t_sec_y);
  j["t_ids"] = ts_or_null(c.t_ids);
  return j;
}

Json to_json(const Finding& f) {
  Json j;
  j["stage"] = to_string(f.stage);
  j["ts"] = f.ts.to_string();
  j["log"] = f.log;
  j["line"] = f.line;
  j["note"] = f.note;
  j["evidence"] = f.evidence;
  return j;
}

Json to_json(const TraceReport& report) {
  Json j;
  j["tool"] = "blastertrace";
  j["format_version"] = 1;
  j["options"] = {{"slack_seconds", seconds(report.options.slack)},
                  {"window_seconds", seconds(report.options.window)},
                  {"skew_seconds", seconds(report.options.skew)}};
  j["fingerprint"] = to_json(report.fingerprint);

  Json requested = Json::array();
  for (const auto& ip : report.victims_requested) requested.push_back(ip.to_string());
  j["victims_requested"] = std::move(requested);

  Json files = Json::array();
  for (const auto& f : report.files) {
    files.push_back({{"host", f.host},
                     {"kind", to_string(f.kind)},
                     {"path", f.path},
                     {"records", f.records},
                     {"issues", f.issues}});
  }
  j["files"] = std::move(files);

  Json victims = Json::array();
  for (const auto& v : report.victims) {
    victims.push_back({{"ip", v.ip.to_string()},
                       {"host", v.host ? Json(*v.host) : Json(nullptr)},
                       {"candidates", v.candidates}});
  }
  j["victims"] = std::move(victims);

  Json attackers = Json::array();
  Json attacker_ips = Json::array();
  for (const auto& section : report.attackers) {
    Json candidates = Json::array();
    for (const auto& c : section.candidates) {
      Json cj;
      cj["victim_ip"] = c.verdict.victim_ip.to_string();
      cj["victim_host"] = c.victim_host;
      cj["attacker_host"] = c.attacker_host ? Json(*c.attacker_host) : Json(nullptr);
      cj["verdict"] = {{"attacker_ip", c.verdict.attacker_ip.to_string()},
                       {"victim_ip", c.verdict.victim_ip.to_string()},
                       {"attempt_ts", c.verdict.attempt_ts.to_string()},
                       {"exploit_status", to_string(c.verdict.exploit_status)},
                       {"attacker_side", to_string(c.verdict.attacker_side)},
                       {"ids", to_string(c.verdict.ids)}};
      Json stages;
      for (Stage s : kAllStages) stages[std::string(to_string(s))] = to_string(c.stages.at(s));
      cj["stages"] = std::move(stages);
      cj["context"] = to_json(c.context);
      Json findings = Json::array();
      for (const auto& f : c.findings) findings.push_back(to_json(f));
      cj["findings"] = std::move(findings);
      candidates.push_back(std::move(cj));
    }
    attackers.push_back({{"attacker_ip", section.attacker_ip.to_string()}, {"candidates", std::move(candidates)}});
    attacker_ips.push_back(section.attacker_ip.to_string());
  }
  j["attackers"] = std::move(attackers);
  j["summary"] = {{"candidates", report.candidate_count()},
                  {"attacker_identified", report.candidate_count() > 0},
                  {"attacker_ips", std::move(attacker_ips)}};
  return j;
}

std::string render_report_text(const TraceReport& report) {
  std::ostringstream out;
  out << "Blaster trace report\n";
  out << "options: slack=" << seconds_text(report.options.slack) << "s window=" << seconds_text(report.options.window)
      << "s skew=" << seconds_text(report.options.skew) << "s\n";
  out << "fingerprint: " << to_json(report.fingerprint).dump() << "\n";
  out << "victims requested:";
  for (const auto& ip : report.victims_requested) out << " " << ip.to_string();
  out << "\n\nFiles:\n";
  for (const auto& f : report.files) {
    out << "  " << (f.host.empty() ? std::string("(ids)") : f.host) << " " << to_string(f.kind) << " " << f.path
        << ": " << f.records << " records, " << f.issues << " issues\n";
  }
  out << "\nVictims:\n";
  for (const auto& v : report.victims) {
    out << "  " << v.ip.to_string() << " host=" << v.host.value_or("(none)") << " candidates=" << v.candidates
        << "\n";
  }
  for (const auto& section : report.attackers) {
    out << "\nAttacker " << section.attacker_ip.to_string() << "\n";
    for (const auto& c : section.candidates) {
      const auto& v = c.verdict;
      out << "  Candidate: victim " << v.victim_ip.to_string() << " (host " << c.victim_host << "), attacker host "
          << c.attacker_host.value_or("(none)") << "\n";
      out << "    verdict: attacker_ip=" << v.attacker_ip.to_string() << " victim_ip=" << v.victim_ip.to_string()
          << " attempt_ts=" << v.attempt_ts.to_string() << " exploit_status=" << to_string(v.exploit_status)
          << " attacker_side=" << to_string(v.attacker_side) << " ids=" << to_string(v.ids) << "\n";
      out << "    stages:";
      for (Stage s : kAllStages) out << " " << to_string(s) << "=" << to_string(c.stages.at(s));
      out << "\n    context:";
      const Json context = to_json(c.context);
      for (const auto& [key, value] : context.items()) {
        out << " " << key << "=" << (value.is_null() ? std::string("-") : value.is_string() ? value.get<std::string>()
                                                                                              : value.dump());
      }
      out << "\n    findings:\n";
      for (const auto& f : c.findings) {
        out << "      [" << f.ts.to_string() << "] " << to_string(f.stage) << " (" << f.log << ":" << f.line
            << ") " << f.note << "\n";
        std::istringstream ev(f.evidence);
        for (std::string line; std::getline(ev, line);) out << "        | " << line << "\n";
      }
    }
  }
  out << "\nSummary: " << report.candidate_count() << " candidate(s); ";
  if (report.attackers.empty()) {
    out << "no attacker identified\n";
  } else {
    out << "attacker(s):";
    for (const auto& section : report.attackers) out << " " << section.attacker_ip.to_string();
    out << "\n";
  }
  return out.str();
}

std::string dump_json(const Json& j) {
  return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace blastertrace
