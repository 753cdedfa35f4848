#include "blastertrace/fingerprint.hpp"

#include <algorithm>

#include "blastertrace/kv_config.hpp"
#include "text_util.hpp"

namespace blastertrace {

void BlasterFingerprint::validate() const {
  const std::pair<const char*, const std::string*> texts[] = {
      {"protocol", &protocol},
      {"msg_app_error", &msg_app_error},
      {"msg_rpc_crash", &msg_rpc_crash},
      {"msg_shutdown", &msg_shutdown},
      {"msg_proc_created", &msg_proc_created},
      {"proc_image_hint", &proc_image_hint},
      {"ids_alert_hint", &ids_alert_hint},
  };
  for (const auto& [name, value] : texts) {
    if (value->empty()) throw ConfigError(name, "must not be empty");
  }
  if (victim_exploit_actions.empty()) throw ConfigError("victim_exploit_actions", "must list at least one action");
}

bool contains_text(std::string_view haystack, std::string_view needle, const BlasterFingerprint& fp) {
  if (fp.case_sensitive) return haystack.find(needle) != std::string_view::npos;
  return detail::ascii_lower(haystack).find(detail::ascii_lower(needle)) != std::string::npos;
}

bool match_firewall(const FirewallEntry& entry, FirewallRole role, const BlasterFingerprint& fp) {
  if (entry.protocol != fp.protocol) return false;
  switch (role) {
    case FirewallRole::VictimAttempt:
      return entry.action == fp.victim_attempt_action && entry.dst_port == fp.attempt_port &&
             !entry.dst_port_absent;
    case FirewallRole::VictimExploit:
      return std::find(fp.victim_exploit_actions.begin(), fp.victim_exploit_actions.end(), entry.action) !=
                 fp.victim_exploit_actions.end() &&
             entry.dst_port == fp.exploit_port && !entry.dst_port_absent;
    case FirewallRole::AttackerAttempt:
      return entry.action == fp.attacker_action && entry.dst_port == fp.attempt_port && !entry.dst_port_absent;
    case FirewallRole::AttackerExploit:
      return entry.action == fp.attacker_action && entry.dst_port == fp.exploit_port && !entry.dst_port_absent;
  }
  return false;
}

const std::string& message_fragment(MessageKind which, const BlasterFingerprint& fp) {
  switch (which) {
    case MessageKind::AppError: return fp.msg_app_error;
    case MessageKind::RpcCrash: return fp.msg_rpc_crash;
    case MessageKind::Shutdown: return fp.msg_shutdown;
    case MessageKind::ProcCreated: return fp.msg_proc_created;
  }
  return fp.msg_app_error;
}

bool match_message(const EventLogEntry& entry, MessageKind which, const BlasterFingerprint& fp) {
  return contains_text(entry.message, message_fragment(which, fp), fp);
}

namespace {

Port port_value(std::string_view key, std::string_view value) {
  auto p = Port::parse(detail::trim(value));
  if (!p) throw ConfigError(std::string(key), "expected a port number 0..65535, got '" + std::string(value) + "'");
  return *p;
}

FirewallAction action_value(std::string_view key, std::string_view value) {
  std::string_view v = detail::trim(value);
  if (v.empty() || v.find_first_of(" \t") != std::string_view::npos) {
    throw ConfigError(std::string(key), "expected a single action token, got '" + std::string(value) + "'");
  }
  return FirewallAction::parse(v);
}

}  // namespace

bool apply_fingerprint_setting(BlasterFingerprint& fp, std::string_view key, std::string_view value) {
  std::string k(key);
  if (k == "attempt_port") {
    fp.attempt_port = port_value(key, value);
  } else if (k == "exploit_port") {
    fp.exploit_port = port_value(key, value);
  } else if (k == "tftp_port") {
    fp.tftp_port = port_value(key, value);
  } else if (k == "victim_attempt_action") {
    fp.victim_attempt_action = action_value(key, value);
  } else if (k == "victim_exploit_actions") {
    fp.victim_exploit_actions.clear();
    for (const auto& item : split_list(value)) fp.victim_exploit_actions.push_back(action_value(key, item));
    if (fp.victim_exploit_actions.empty()) throw ConfigError(k, "must list at least one action");
  } else if (k == "attacker_action") {
    fp.attacker_action = action_value(key, value);
  } else if (k == "protocol") {
    fp.protocol = std::string(detail::trim(value));
  } else if (k == "msg_app_error") {
    fp.msg_app_error = std::string(value);
  } else if (k == "msg_rpc_crash") {
    fp.msg_rpc_crash = std::string(value);
  } else if (k == "msg_shutdown") {
    fp.msg_shutdown = std::string(value);
  } else if (k == "msg_proc_created") {
    fp.msg_proc_created = std::string(value);
  } else if (k == "proc_image_hint") {
    fp.proc_image_hint = std::string(value);
  } else if (k == "ids_alert_hint") {
    fp.ids_alert_hint = std::string(value);
  } else if (k == "case_sensitive") {
    if (!parse_bool(value, fp.case_sensitive)) throw ConfigError(k, "expected true or false");
  } else {
    return false;
  }
  return true;
}

BlasterFingerprint load_fingerprint(std::string_view text) {
  BlasterFingerprint fp;
  for (const auto& section : parse_kv_config(text)) {
    for (const auto& entry : section.entries) {
      if (!apply_fingerprint_setting(fp, entry.key, entry.value)) {
        throw ConfigError(entry.key, "unknown fingerprint setting (line " + std::to_string(entry.line) + ")");
      }
    }
  }
  fp.validate();
  return fp;
}

}  // namespace blastertrace
