#pragma once

#include <span>
#include <string_view>

#include "blastertrace/fingerprint.hpp"
#include "blastertrace/log_model.hpp"
#include "blastertrace/trace_context.hpp"

namespace blastertrace {

enum class IdsVerdict { None, PortsweepOnly, Corroborated };

std::string_view to_string(IdsVerdict verdict);

struct IdsResult {
  IdsVerdict verdict = IdsVerdict::None;
  TraceContext context;  // t_ids set to the earliest alert of the deciding tier
  std::vector<Finding> findings;
};

/// Alerts on date_fw inside [t_fw1 - slack, t_fw2 + slack] (t_fw2 falls back to
/// t_fw1). Tier one: source is the attacker and destination is the victim.
/// Tier two: source is the attacker, destination is anything else; these are
/// reported as destination mismatches. `fp` only annotates finding notes.
/// Requires attacker_ip, date_fw and t_fw1.
IdsResult trace_ids(std::span<const IdsAlert> alerts, const TraceContext& ctx, Duration slack,
                    const BlasterFingerprint& fp = {});

}  // namespace blastertrace
