#pragma once

// Blaster fingerprints as data. The tracing passes hold the control flow; every
// port, action and message fragment they test lives here.

#include <string>
#include <string_view>
#include <vector>

#include "blastertrace/log_model.hpp"

namespace blastertrace {

struct BlasterFingerprint {
  Port attempt_port{135};   // DCOM RPC exploit
  Port exploit_port{4444};  // backdoor shell
  Port tftp_port{69};       // worm binary transfer; recorded, not traced

  FirewallAction victim_attempt_action{FirewallAction::Kind::OpenInbound};
  // The victim may log the backdoor connection as DROP (attempted) or OPEN (established).
  std::vector<FirewallAction> victim_exploit_actions{FirewallAction{FirewallAction::Kind::Drop},
                                                     FirewallAction{FirewallAction::Kind::Open}};
  FirewallAction attacker_action{FirewallAction::Kind::Open};
  std::string protocol = "TCP";

  std::string msg_app_error = "svchost.exe, generated an application error";
  std::string msg_rpc_crash = "The Remote Procedure Call (RPC) service terminated unexpectedly";
  std::string msg_shutdown = "Windows is shutting down";
  std::string msg_proc_created = "A new process has been created";
  std::string proc_image_hint = "Blaster.exe";
  std::string ids_alert_hint = "Portsweep";

  bool case_sensitive = true;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

enum class FirewallRole { VictimAttempt, VictimExploit, AttackerAttempt, AttackerExploit };

enum class MessageKind { AppError, RpcCrash, Shutdown, ProcCreated };

bool match_firewall(const FirewallEntry& entry, FirewallRole role, const BlasterFingerprint& fp);

bool match_message(const EventLogEntry& entry, MessageKind which, const BlasterFingerprint& fp);

/// Substring test honoring fp.case_sensitive.
bool contains_text(std::string_view haystack, std::string_view needle, const BlasterFingerprint& fp);

const std::string& message_fragment(MessageKind which, const BlasterFingerprint& fp);

/// Apply one "key = value" override. Returns false for keys that are not
/// fingerprint fields; throws ConfigError for bad values.
bool apply_fingerprint_setting(BlasterFingerprint& fp, std::string_view key, std::string_view value);

/// Parse a whole key=value file of overrides on top of the defaults.
BlasterFingerprint load_fingerprint(std::string_view text);

}  // namespace blastertrace
