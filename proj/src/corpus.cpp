#include "blastertrace/corpus.hpp"

#include "blastertrace/kv_config.hpp"
#include "text_util.hpp"

namespace blastertrace {

std::string_view to_string(HostRole role) {
  switch (role) {
    case HostRole::DeclaredVictim: return "declared-victim";
    case HostRole::SuspectedAttacker: return "suspected-attacker";
    case HostRole::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(LogKind kind) {
  switch (kind) {
    case LogKind::Firewall: return "firewall";
    case LogKind::Security: return "security";
    case LogKind::System: return "system";
    case LogKind::Application: return "application";
    case LogKind::IdsAlert: return "ids-alert";
  }
  return "unknown";
}

const std::optional<std::string>& HostLogs::path(LogKind kind) const {
  static const std::optional<std::string> kNone;
  switch (kind) {
    case LogKind::Firewall: return firewall;
    case LogKind::Security: return security;
    case LogKind::System: return system;
    case LogKind::Application: return application;
    case LogKind::IdsAlert: return kNone;
  }
  return kNone;
}

void LogCorpus::validate() const {
  for (const auto& [label, host] : hosts) {
    if (host.role == HostRole::DeclaredVictim && host.firewall) return;
  }
  throw ConfigError("corpus", "no host with role=victim has a firewall log");
}

namespace {

HostRole parse_role(const KvEntry& e) {
  std::string v = detail::ascii_lower(e.value);
  if (v == "victim" || v == "declared-victim") return HostRole::DeclaredVictim;
  if (v == "attacker" || v == "suspected-attacker") return HostRole::SuspectedAttacker;
  if (v == "unknown") return HostRole::Unknown;
  throw ConfigError("role", "line " + std::to_string(e.line) + ": expected victim, attacker or unknown, got '" +
                                e.value + "'");
}

std::string require_path(const KvEntry& e) {
  if (e.value.empty()) throw ConfigError(e.key, "line " + std::to_string(e.line) + ": empty path");
  return e.value;
}

}  // namespace

LogCorpus parse_corpus_manifest(std::string_view text) {
  LogCorpus corpus;
  for (const auto& section : parse_kv_config(text)) {
    if (section.name.empty()) {
      if (!section.entries.empty()) {
        throw ConfigError(section.entries.front().key, "line " + std::to_string(section.entries.front().line) +
                                                           ": setting outside of a [host ...] or [ids] section");
      }
      continue;
    }
    if (section.name == "ids") {
      for (const auto& e : section.entries) {
        if (e.key != "alert") throw ConfigError(e.key, "unknown key in [ids] (line " + std::to_string(e.line) + ")");
        corpus.ids_alert = require_path(e);
      }
      continue;
    }
    if (!detail::starts_with(section.name, "host ")) {
      throw ConfigError(section.name, "unknown section (line " + std::to_string(section.line) + ")");
    }
    std::string label(detail::trim(std::string_view(section.name).substr(5)));
    if (label.empty()) throw ConfigError("host", "line " + std::to_string(section.line) + ": missing host label");
    if (corpus.hosts.count(label)) throw ConfigError(label, "duplicate host section");
    HostLogs host;
    for (const auto& e : section.entries) {
      if (e.key == "role") {
        host.role = parse_role(e);
      } else if (e.key == "ip") {
        host.ip = IpAddress::parse(e.value);
        if (!host.ip) throw ConfigError("ip", "line " + std::to_string(e.line) + ": invalid IPv4 address");
      } else if (e.key == "firewall") {
        host.firewall = require_path(e);
      } else if (e.key == "security") {
        host.security = require_path(e);
      } else if (e.key == "system") {
        host.system = require_path(e);
      } else if (e.key == "application") {
        host.application = require_path(e);
      } else {
        throw ConfigError(e.key, "unknown host key (line " + std::to_string(e.line) + ")");
      }
    }
    corpus.hosts.emplace(std::move(label), std::move(host));
  }
  return corpus;
}

std::string render_corpus_manifest(const LogCorpus& corpus) {
  std::string out = "# blastertrace corpus manifest\n";
  for (const auto& [label, host] : corpus.hosts) {
    out += "\n[host " + label + "]\n";
    switch (host.role) {
      case HostRole::DeclaredVictim: out += "role = victim\n"; break;
      case HostRole::SuspectedAttacker: out += "role = attacker\n"; break;
      case HostRole::Unknown: out += "role = unknown\n"; break;
    }
    if (host.ip) out += "ip = " + host.ip->to_string() + "\n";
    for (LogKind kind : {LogKind::Firewall, LogKind::Security, LogKind::System, LogKind::Application}) {
      if (const auto& p = host.path(kind)) out += std::string(to_string(kind)) + " = " + *p + "\n";
    }
  }
  if (corpus.ids_alert) out += "\n[ids]\nalert = " + *corpus.ids_alert + "\n";
  return out;
}

}  // namespace blastertrace
