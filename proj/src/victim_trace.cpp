#include "blastertrace/victim_trace.hpp"

#include "chronology.hpp"

namespace blastertrace {

namespace {

std::string connection_note(const FirewallEntry& e) {
  return e.src_ip.to_string() + ":" + std::to_string(e.src_port.value) + " -> " + e.dst_ip.to_string() + ":" +
         std::to_string(e.dst_port.value) + " " + e.action.to_string() + " " + e.protocol;
}

// Earliest record at or after `not_before` on the same date that matches `kind`.
const EventLogEntry* first_message(std::span<const EventLogEntry> log, MessageKind kind, const Timestamp& not_before,
                                   const BlasterFingerprint& fp) {
  for (const EventLogEntry* e : detail::chronological(log)) {
    if (e->ts.date != not_before.date || e->ts < not_before) continue;
    if (match_message(*e, kind, fp)) return e;
  }
  return nullptr;
}

}  // namespace

std::vector<TraceStep> trace_victim_firewall(std::span<const FirewallEntry> entries, const IpAddress& victim_ip,
                                             const BlasterFingerprint& fp) {
  std::vector<TraceStep> candidates;
  auto ordered = detail::chronological(entries);
  for (const FirewallEntry* attempt : ordered) {
    if (attempt->dst_ip != victim_ip || !match_firewall(*attempt, FirewallRole::VictimAttempt, fp)) continue;

    TraceStep step;
    TraceContext& ctx = step.context;
    ctx.victim_ip = victim_ip;
    ctx.dest_ip = attempt->dst_ip;
    ctx.attacker_ip = attempt->src_ip;
    ctx.src_port_attempt = attempt->src_port;
    ctx.date_fw = attempt->ts.date;
    ctx.t_fw1 = attempt->ts;
    step.findings.push_back(finding_for(Stage::FwAttempt, *attempt, "attempt " + connection_note(*attempt)));

    for (const FirewallEntry* exploit : ordered) {
      if (exploit->ts.date != attempt->ts.date || exploit->ts < attempt->ts) continue;
      if (exploit->src_ip != attempt->src_ip || exploit->dst_ip != attempt->dst_ip) continue;
      if (!match_firewall(*exploit, FirewallRole::VictimExploit, fp)) continue;
      ctx.src_port_exploit = exploit->src_port;
      ctx.t_fw2 = exploit->ts;
      ctx.exploit_action = exploit->action;
      bool established = exploit->action.kind() == FirewallAction::Kind::Open;
      step.findings.push_back(finding_for(
          Stage::FwExploit, *exploit,
          std::string(established ? "exploit established" : "exploit attempted") + " (" +
              exploit->action.to_string() + ") " + connection_note(*exploit)));
      break;
    }
    candidates.push_back(std::move(step));
  }
  return candidates;
}

TraceStep trace_victim_events(std::span<const EventLogEntry> application, std::span<const EventLogEntry> system,
                              std::span<const EventLogEntry> security, const TraceContext& ctx,
                              const BlasterFingerprint& fp) {
  if (!ctx.t_fw2) throw ContractViolation("trace_victim_events requires the exploit time (t_fw2)");

  TraceStep step{ctx, {}};
  TraceContext& out = step.context;

  const EventLogEntry* app = first_message(application, MessageKind::AppError, *ctx.t_fw2, fp);
  if (!app) return step;
  out.t_app1 = app->ts;
  step.findings.push_back(finding_for(Stage::AppError, *app, app->source + " event " + std::to_string(app->event_id) +
                                                                 ": application error in the RPC host process"));

  const EventLogEntry* sys = first_message(system, MessageKind::RpcCrash, *out.t_app1, fp);
  if (!sys) return step;
  out.t_sys = sys->ts;
  step.findings.push_back(finding_for(Stage::RpcCrash, *sys, sys->source + " event " + std::to_string(sys->event_id) +
                                                                 ": RPC service terminated"));

  const EventLogEntry* sec = first_message(security, MessageKind::Shutdown, *out.t_sys, fp);
  if (!sec) return step;
  out.t_sec = sec->ts;
  step.findings.push_back(finding_for(Stage::Shutdown, *sec, sec->source + " event " + std::to_string(sec->event_id) +
                                                                 ": forced shutdown"));
  return step;
}

}  // namespace blastertrace
