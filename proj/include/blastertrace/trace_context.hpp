#pragma once

// Correlation state threaded from the victim's logs to the attacker's logs and
// the IDS alert log, plus the evidence records each stage emits.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blastertrace/log_model.hpp"

namespace blastertrace {

/// A tracing pass was called without the context fields it depends on.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TraceContext {
  IpAddress victim_ip;
  IpAddress dest_ip;  // always equal to victim_ip

  // Seed from the victim firewall attempt.
  std::optional<IpAddress> attacker_ip;
  std::optional<Port> src_port_attempt;
  std::optional<Date> date_fw;
  std::optional<Timestamp> t_fw1;

  // Victim firewall exploit connection.
  std::optional<Port> src_port_exploit;
  std::optional<Timestamp> t_fw2;
  std::optional<FirewallAction> exploit_action;

  // Victim event-log chain.
  std::optional<Timestamp> t_app1;
  std::optional<Timestamp> t_sys;
  std::optional<Timestamp> t_sec;

  // Attacker side.
  std::optional<Timestamp> t_fw1_y;
  std::optional<Timestamp> t_fw2_y;
  std::optional<Timestamp> t_sec_y;

  std::optional<Timestamp> t_ids;

  friend bool operator==(const TraceContext&, const TraceContext&) = default;
};

/// Ordered: ties between findings at the same timestamp fall back to this order.
enum class Stage {
  FwAttempt,
  FwExploit,
  AppError,
  RpcCrash,
  Shutdown,
  AttackerFwAttempt,
  AttackerFwExploit,
  AttackerProcCreated,
  AttackerShutdown,
  IdsCorroboration,
};

inline constexpr Stage kAllStages[] = {
    Stage::FwAttempt,         Stage::FwExploit,           Stage::AppError,         Stage::RpcCrash,
    Stage::Shutdown,          Stage::AttackerFwAttempt,   Stage::AttackerFwExploit, Stage::AttackerProcCreated,
    Stage::AttackerShutdown,  Stage::IdsCorroboration,
};

std::string_view to_string(Stage stage);

struct Finding {
  Stage stage = Stage::FwAttempt;
  std::string evidence;  // source record, byte-identical
  std::size_t line = 0;  // first source line, 1-based
  Timestamp ts;
  std::string note;
  std::string log;  // file the evidence came from; filled in by the pipeline

  friend bool operator==(const Finding&, const Finding&) = default;
};

// Evidence is the record's verbatim source text; records built in memory
// (no source) fall back to their rendered form.
Finding finding_for(Stage stage, const FirewallEntry& entry, std::string note);
Finding finding_for(Stage stage, const EventLogEntry& entry, std::string note);
Finding finding_for(Stage stage, const IdsAlert& alert, std::string note);

}  // namespace blastertrace
