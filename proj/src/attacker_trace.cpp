#include "blastertrace/attacker_trace.hpp"

#include "chronology.hpp"

namespace blastertrace {

TraceStep trace_attacker_firewall(std::span<const FirewallEntry> entries, const TraceContext& ctx,
                                  const BlasterFingerprint& fp) {
  if (!ctx.attacker_ip || !ctx.src_port_attempt || !ctx.date_fw || !ctx.t_fw1) {
    throw ContractViolation("trace_attacker_firewall requires attacker_ip, src_port_attempt, date_fw and t_fw1");
  }
  TraceStep step{ctx, {}};
  auto ordered = detail::chronological(entries);

  const FirewallEntry* attempt = nullptr;
  for (const FirewallEntry* e : ordered) {
    if (e->ts.date != *ctx.date_fw || e->ts > *ctx.t_fw1) continue;
    if (e->src_ip != *ctx.attacker_ip || e->dst_ip != ctx.dest_ip || e->src_port != *ctx.src_port_attempt) continue;
    if (!match_firewall(*e, FirewallRole::AttackerAttempt, fp)) continue;
    attempt = e;
    break;
  }
  if (!attempt) return step;
  step.context.t_fw1_y = attempt->ts;
  step.findings.push_back(finding_for(Stage::AttackerFwAttempt, *attempt,
                                      "outbound attempt from source port " +
                                          std::to_string(attempt->src_port.value) + " confirmed on attacker host"));

  if (!ctx.src_port_exploit) return step;
  for (const FirewallEntry* e : ordered) {
    if (e->ts.date != attempt->ts.date || e->ts < attempt->ts) continue;
    if (e->src_ip != *ctx.attacker_ip || e->dst_ip != ctx.dest_ip || e->src_port != *ctx.src_port_exploit) continue;
    if (!match_firewall(*e, FirewallRole::AttackerExploit, fp)) continue;
    step.context.t_fw2_y = e->ts;
    step.findings.push_back(finding_for(Stage::AttackerFwExploit, *e,
                                        "outbound exploit connection from source port " +
                                            std::to_string(e->src_port.value) + " confirmed on attacker host"));
    break;
  }
  return step;
}

TraceStep trace_attacker_security(std::span<const EventLogEntry> security, const TraceContext& ctx,
                                  const BlasterFingerprint& fp, Duration window) {
  if (!ctx.t_fw1_y) throw ContractViolation("trace_attacker_security requires the attacker attempt time (t_fw1_y)");
  TraceStep step{ctx, {}};
  auto ordered = detail::chronological(security);

  const Timestamp not_before = ctx.t_fw1_y->shifted(-window);
  for (const EventLogEntry* e : ordered) {
    if (e->ts < not_before) continue;
    if (!match_message(*e, MessageKind::ProcCreated, fp) || !contains_text(e->message, fp.proc_image_hint, fp)) {
      continue;
    }
    step.context.t_sec_y = e->ts;
    step.findings.push_back(
        finding_for(Stage::AttackerProcCreated, *e, "worm process created (" + fp.proc_image_hint + ")"));
    break;
  }

  if (ctx.t_fw2_y) {
    for (const EventLogEntry* e : ordered) {
      if (e->ts.date != ctx.t_fw2_y->date || e->ts < *ctx.t_fw2_y) continue;
      if (!match_message(*e, MessageKind::Shutdown, fp)) continue;
      step.findings.push_back(finding_for(Stage::AttackerShutdown, *e, "shutdown after the exploit connection"));
    }
  }
  return step;
}

}  // namespace blastertrace
