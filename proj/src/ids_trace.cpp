#include "blastertrace/ids_trace.hpp"

#include "chronology.hpp"

namespace blastertrace {

std::string_view to_string(IdsVerdict verdict) {
  switch (verdict) {
    case IdsVerdict::None: return "none";
    case IdsVerdict::PortsweepOnly: return "portsweep-only";
    case IdsVerdict::Corroborated: return "corroborated";
  }
  return "none";
}

IdsResult trace_ids(std::span<const IdsAlert> alerts, const TraceContext& ctx, Duration slack,
                    const BlasterFingerprint& fp) {
  if (!ctx.attacker_ip || !ctx.date_fw || !ctx.t_fw1) {
    throw ContractViolation("trace_ids requires attacker_ip, date_fw and t_fw1");
  }
  IdsResult result;
  result.context = ctx;

  const Timestamp start = ctx.t_fw1->shifted(-slack);
  const Timestamp end = ctx.t_fw2.value_or(*ctx.t_fw1).shifted(slack);

  std::vector<const IdsAlert*> full_match;
  std::vector<const IdsAlert*> source_only;
  for (const IdsAlert* a : detail::chronological(alerts)) {
    if (a->ts.date != *ctx.date_fw || a->ts < start || a->ts > end) continue;
    if (a->src_ip != *ctx.attacker_ip) continue;
    (a->dst_ip == ctx.dest_ip ? full_match : source_only).push_back(a);
  }

  auto signature = [&](const IdsAlert& a) {
    std::string s = a.message;
    if (contains_text(a.message, fp.ids_alert_hint, fp)) s += " [portsweep signature]";
    return s;
  };

  for (const IdsAlert* a : full_match) {
    result.findings.push_back(finding_for(Stage::IdsCorroboration, *a,
                                          "alert from attacker to victim " + a->dst_ip.to_string() + ": " +
                                              signature(*a)));
  }
  for (const IdsAlert* a : source_only) {
    result.findings.push_back(finding_for(Stage::IdsCorroboration, *a,
                                          "alert from attacker to " + a->dst_ip.to_string() +
                                              " (destination is not the victim; false-positive condition, "
                                              "source attribution only): " +
                                              signature(*a)));
  }

  if (!full_match.empty()) {
    result.verdict = IdsVerdict::Corroborated;
    result.context.t_ids = full_match.front()->ts;
  } else if (!source_only.empty()) {
    result.verdict = IdsVerdict::PortsweepOnly;
    result.context.t_ids = source_only.front()->ts;
  }
  return result;
}

}  // namespace blastertrace
