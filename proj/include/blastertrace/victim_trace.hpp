#pragma once

#include <span>
#include <vector>

#include "blastertrace/fingerprint.hpp"
#include "blastertrace/log_model.hpp"
#include "blastertrace/trace_context.hpp"

namespace blastertrace {

struct TraceStep {
  TraceContext context;
  std::vector<Finding> findings;
};

/// One candidate per victim-attempt record aimed at `victim_ip`, paired with the
/// earliest matching exploit record (same date, same endpoints, not earlier).
/// Candidates come out in chronological order of their attempt.
std::vector<TraceStep> trace_victim_firewall(std::span<const FirewallEntry> entries, const IpAddress& victim_ip,
                                             const BlasterFingerprint& fp);

/// Chains application-error -> RPC crash -> shutdown on the firewall date, each
/// stage taking the earliest record at or after the previous stage's time.
/// Requires ctx.t_fw2; throws ContractViolation otherwise.
TraceStep trace_victim_events(std::span<const EventLogEntry> application, std::span<const EventLogEntry> system,
                              std::span<const EventLogEntry> security, const TraceContext& ctx,
                              const BlasterFingerprint& fp);

}  // namespace blastertrace
