#pragma once

#include <span>

#include "blastertrace/fingerprint.hpp"
#include "blastertrace/log_model.hpp"
#include "blastertrace/trace_context.hpp"
#include "blastertrace/victim_trace.hpp"

namespace blastertrace {

/// Confirms the outbound attempt (at or before the victim saw it) and, when the
/// victim trace found one, the outbound exploit connection. Only the attacker
/// fields of the context (t_fw1_y, t_fw2_y) are written.
/// Requires attacker_ip, src_port_attempt, date_fw and t_fw1.
TraceStep trace_attacker_firewall(std::span<const FirewallEntry> entries, const TraceContext& ctx,
                                  const BlasterFingerprint& fp);

/// Looks for the worm's process-creation record from `t_fw1_y - window` onward;
/// the earliest one sets t_sec_y. Shutdown records at or after t_fw2_y on the
/// same date are reported as supplementary findings. Requires t_fw1_y.
TraceStep trace_attacker_security(std::span<const EventLogEntry> security, const TraceContext& ctx,
                                  const BlasterFingerprint& fp, Duration window);

}  // namespace blastertrace
