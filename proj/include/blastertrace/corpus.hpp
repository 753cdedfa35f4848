#pragma once

// A corpus names the log files collected from each host plus the IDS alert log.
//
// Manifest format (key = value, '#' comments, paths relative to the manifest):
//
//   [host victim-ayu]
//   role = victim            # victim | attacker | unknown
//   ip = 192.168.3.13        # optional
//   firewall = victim/pfirewall.log
//   security = victim/security.txt
//   system = victim/system.txt
//   application = victim/application.txt
//
//   [ids]
//   alert = ids/alert.log

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "blastertrace/log_model.hpp"

namespace blastertrace {

enum class HostRole { DeclaredVictim, SuspectedAttacker, Unknown };

std::string_view to_string(HostRole role);

enum class LogKind { Firewall, Security, System, Application, IdsAlert };

std::string_view to_string(LogKind kind);

struct HostLogs {
  HostRole role = HostRole::Unknown;
  std::optional<IpAddress> ip;
  std::optional<std::string> firewall;
  std::optional<std::string> security;
  std::optional<std::string> system;
  std::optional<std::string> application;

  const std::optional<std::string>& path(LogKind kind) const;
};

struct LogCorpus {
  std::map<std::string, HostLogs> hosts;  // keyed by host label
  std::optional<std::string> ids_alert;

  /// Throws ConfigError unless some declared victim has a firewall log.
  void validate() const;
};

/// Throws ConfigError with the offending key or section.
LogCorpus parse_corpus_manifest(std::string_view text);

std::string render_corpus_manifest(const LogCorpus& corpus);

}  // namespace blastertrace
