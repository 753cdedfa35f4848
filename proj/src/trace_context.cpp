#include "blastertrace/trace_context.hpp"

namespace blastertrace {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::FwAttempt: return "fw-attempt";
    case Stage::FwExploit: return "fw-exploit";
    case Stage::AppError: return "app-error";
    case Stage::RpcCrash: return "rpc-crash";
    case Stage::Shutdown: return "shutdown";
    case Stage::AttackerFwAttempt: return "attacker-fw-attempt";
    case Stage::AttackerFwExploit: return "attacker-fw-exploit";
    case Stage::AttackerProcCreated: return "attacker-proc-created";
    case Stage::AttackerShutdown: return "attacker-shutdown";
    case Stage::IdsCorroboration: return "ids-corroboration";
  }
  return "unknown";
}

namespace {

Finding make(Stage stage, const SourceRef& src, std::string fallback, const Timestamp& ts, std::string note) {
  Finding f;
  f.stage = stage;
  f.evidence = src.text.empty() ? std::move(fallback) : src.text;
  f.line = src.first_line;
  f.ts = ts;
  f.note = std::move(note);
  return f;
}

}  // namespace

Finding finding_for(Stage stage, const FirewallEntry& entry, std::string note) {
  return make(stage, entry.source, entry.source.text.empty() ? render_firewall_line(entry) : std::string{}, entry.ts,
              std::move(note));
}

Finding finding_for(Stage stage, const EventLogEntry& entry, std::string note) {
  return make(stage, entry.source_ref, entry.source_ref.text.empty() ? render_event_record(entry) : std::string{},
              entry.ts, std::move(note));
}

Finding finding_for(Stage stage, const IdsAlert& alert, std::string note) {
  return make(stage, alert.source, alert.source.text.empty() ? render_ids_block(alert) : std::string{}, alert.ts,
              std::move(note));
}

}  // namespace blastertrace
