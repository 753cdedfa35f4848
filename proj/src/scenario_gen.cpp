#include "blastertrace/scenario_gen.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "blastertrace/kv_config.hpp"
#include "blastertrace/report_format.hpp"
#include "text_util.hpp"

namespace blastertrace {

namespace {

using std::chrono::seconds;

constexpr std::string_view kFirewallHeader =
    "#Version: 1.5\n"
    "#Software: Microsoft Windows Firewall\n"
    "#Time Format: Local\n"
    "#Fields: date time action protocol src-ip dst-ip src-port dst-port size tcpflags tcpsyn tcpack tcpwin "
    "icmptype icmpcode info path\n"
    "\n";

// Lines of one output file, ordered by timestamp on output; ties keep insertion order.
class FileBuilder {
 public:
  void add(const Timestamp& ts, std::string text) { items_.push_back({ts, items_.size(), std::move(text)}); }

  std::string finish(std::string_view header, std::string_view separator) {
    std::stable_sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) { return a.ts < b.ts; });
    std::string out(header);
    for (const auto& item : items_) {
      out += item.text;
      out += separator;
    }
    return out;
  }

  bool empty() const { return items_.empty(); }

 private:
  struct Item {
    Timestamp ts;
    std::size_t seq;
    std::string text;
  };
  std::vector<Item> items_;
};

struct HostFiles {
  std::string label;
  std::string computer;
  IpAddress ip;
  FileBuilder firewall;
  FileBuilder security;
  FileBuilder system;
  FileBuilder application;
};

FirewallEntry fw(const Timestamp& ts, FirewallAction::Kind kind, std::string proto, IpAddress src, IpAddress dst,
                 std::optional<std::uint16_t> sport, std::optional<std::uint16_t> dport,
                 std::vector<std::string> extras) {
  FirewallEntry e;
  e.ts = ts;
  e.action = FirewallAction{kind};
  e.protocol = std::move(proto);
  e.src_ip = src;
  e.dst_ip = dst;
  e.src_port = Port{sport.value_or(0)};
  e.dst_port = Port{dport.value_or(0)};
  e.src_port_absent = !sport;
  e.dst_port_absent = !dport;
  e.extras = std::move(extras);
  return e;
}

std::vector<std::string> dashes(std::size_t n) { return std::vector<std::string>(n, "-"); }

// First message line goes on the record line, the rest become continuation lines.
std::string event_text(const Timestamp& ts, std::string source, std::string type, std::string category,
                       std::uint32_t id, std::string user, const std::string& computer,
                       const std::vector<std::string>& message_lines) {
  EventLogEntry e;
  e.ts = ts;
  e.source = std::move(source);
  e.event_type = std::move(type);
  e.category = std::move(category);
  e.event_id = id;
  e.user = std::move(user);
  e.computer = computer;
  e.message = message_lines.empty() ? std::string() : message_lines.front();
  std::string out = render_event_record(e);
  for (std::size_t i = 1; i < message_lines.size(); ++i) out += "\n" + message_lines[i];
  return out;
}

std::string us_date(const Timestamp& ts) {
  return detail::pad2(static_cast<int>(ts.date.month)) + "/" + detail::pad2(static_cast<int>(ts.date.day)) + "/" +
         std::to_string(ts.date.year);
}

IdsAlert ids_alert(std::uint32_t gid, std::uint32_t sid, std::uint32_t rev, std::string message,
                   std::uint32_t priority, const Timestamp& ts, IpAddress src, IpAddress dst) {
  IdsAlert a;
  a.gid = gid;
  a.sid = sid;
  a.rev = rev;
  a.message = std::move(message);
  a.priority = priority;
  a.ts = ts;
  a.src_ip = src;
  a.dst_ip = dst;
  return a;
}

std::string label_for_victim(std::size_t i) { return "victim" + std::to_string(i + 1); }

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

Duration seconds_field(const KvEntry& entry) {
  auto v = detail::parse_signed(entry.value);
  if (!v) throw ConfigError(entry.key, "expected an integer number of seconds, got '" + entry.value + "'");
  if (*v < 0) throw ConfigError(entry.key, "duration must be non-negative");
  if (*v > 86'400) throw ConfigError(entry.key, "duration exceeds one day");
  return seconds{*v};
}

IpAddress ip_field(const std::string& key, std::string_view text) {
  auto ip = IpAddress::parse(detail::trim(text));
  if (!ip) throw ConfigError(key, "invalid IPv4 address '" + std::string(text) + "'");
  return *ip;
}

// Planted timeline for victim i, relative to base_ts.
struct VictimTimes {
  Timestamp attacker_attempt, victim_attempt, attacker_exploit, victim_exploit, crash, shutdown;
  Timestamp attacker_close_attempt, attacker_close_exploit;
};

VictimTimes victim_times(const ScenarioConfig& c, std::size_t i) {
  VictimTimes t;
  t.attacker_attempt = c.base_ts.shifted(seconds{static_cast<long>(i)});
  t.victim_attempt = t.attacker_attempt.shifted(seconds{1});
  t.attacker_exploit = t.attacker_attempt.shifted(c.exploit_delay);
  t.victim_exploit = t.attacker_exploit.shifted(seconds{1});
  t.crash = t.victim_exploit.shifted(c.crash_delay);
  t.shutdown = t.crash.shifted(seconds{63});
  t.attacker_close_attempt = t.attacker_exploit.shifted(seconds{15});
  t.attacker_close_exploit = t.attacker_close_attempt.shifted(seconds{60});
  return t;
}

constexpr Duration kProcLead = seconds{25};

// Earliest and latest planted timestamps.
std::pair<Timestamp, Timestamp> attack_span(const ScenarioConfig& c) {
  Timestamp lo = c.base_ts.shifted(-std::max<Duration>(c.sweep_lead, kProcLead));
  Timestamp hi = c.base_ts.shifted(c.sweep_lead > seconds{0} ? seconds{60} : seconds{0});
  for (std::size_t i = 0; i < c.victim_ips.size(); ++i) {
    auto t = victim_times(c, i);
    hi = std::max({hi, t.shutdown, t.attacker_close_exploit});
  }
  return {lo, hi};
}

}  // namespace

void ScenarioConfig::validate() const {
  std::set<IpAddress> seen;
  for (const auto& v : victim_ips) {
    if (v == attacker_ip) throw ConfigError("victim_ips", "attacker_ip must not be listed as a victim");
    if (!seen.insert(v).second) throw ConfigError("victim_ips", "duplicate victim " + v.to_string());
  }
  for (const auto& b : bystander_ips) {
    if (b == attacker_ip || seen.count(b)) {
      throw ConfigError("bystander_ips", b.to_string() + " is already the attacker or a victim");
    }
  }
  for (auto [name, d] : {std::pair{"sweep_lead", sweep_lead}, std::pair{"exploit_delay", exploit_delay},
                         std::pair{"crash_delay", crash_delay}}) {
    if (d < Duration{0}) throw ConfigError(name, "duration must be non-negative");
  }
  if (victim_ips.size() > 1000) throw ConfigError("victim_ips", "at most 1000 victims");
  if (!base_ts.date.valid() || base_ts.micros_of_day < 0 || base_ts.micros_of_day >= Timestamp::kMicrosPerDay) {
    throw ConfigError("base_ts", "invalid timestamp");
  }
  if (attack) {
    auto [lo, hi] = attack_span(*this);
    if (lo.date != base_ts.date || hi.date != base_ts.date) {
      throw ConfigError("base_ts", "attack timeline " + lo.to_string() + " .. " + hi.to_string() +
                                       " does not fit on " + base_ts.date.to_string());
    }
  }
}

ScenarioConfig parse_scenario_config(std::string_view text) {
  ScenarioConfig c;
  for (const auto& section : parse_kv_config(text)) {
    if (!section.name.empty()) throw ConfigError(section.name, "scenario configs have no sections");
    for (const auto& e : section.entries) {
      const std::string& k = e.key;
      if (k == "attacker_ip") {
        c.attacker_ip = ip_field(k, e.value);
      } else if (k == "victim_ips" || k == "bystander_ips") {
        std::vector<IpAddress> ips;
        for (const auto& item : split_list(e.value)) ips.push_back(ip_field(k, item));
        (k == "victim_ips" ? c.victim_ips : c.bystander_ips) = std::move(ips);
      } else if (k == "base_ts") {
        auto ts = Timestamp::parse(e.value);
        if (!ts) throw ConfigError(k, "expected YYYY-MM-DD HH:MM:SS, got '" + e.value + "'");
        c.base_ts = *ts;
      } else if (k == "sweep_lead") {
        c.sweep_lead = seconds_field(e);
      } else if (k == "exploit_delay") {
        c.exploit_delay = seconds_field(e);
      } else if (k == "crash_delay") {
        c.crash_delay = seconds_field(e);
      } else if (k == "victim_drop_4444" || k == "attack") {
        bool b = false;
        if (!parse_bool(e.value, b)) throw ConfigError(k, "expected true or false, got '" + e.value + "'");
        (k == "attack" ? c.attack : c.victim_drop_4444) = b;
      } else if (k == "noise_lines") {
        auto n = detail::parse_unsigned<std::size_t>(e.value);
        if (!n || *n > 10'000'000) throw ConfigError(k, "expected a non-negative integer, got '" + e.value + "'");
        c.noise_lines = *n;
      } else if (k == "seed") {
        auto n = detail::parse_unsigned<std::uint64_t>(e.value);
        if (!n) throw ConfigError(k, "expected a non-negative integer, got '" + e.value + "'");
        c.seed = *n;
      } else {
        throw ConfigError(k, "unknown scenario setting");
      }
    }
  }
  c.validate();
  return c;
}

namespace {

class Generator {
 public:
  explicit Generator(const ScenarioConfig& c) : c_(c), rng_(c.seed) {}

  GeneratedScenario run() {
    GeneratedScenario out;
    out.config = c_;

    attacker_.label = "attacker";
    attacker_.computer = "ATTACKER";
    attacker_.ip = c_.attacker_ip;
    for (std::size_t i = 0; i < c_.victim_ips.size(); ++i) {
      HostFiles h;
      h.label = label_for_victim(i);
      h.computer = upper(h.label);
      h.ip = c_.victim_ips[i];
      victims_.push_back(std::move(h));
    }
    next_port_ = static_cast<std::uint16_t>(pick(1100, 4000));

    if (c_.attack) plant(out);
    add_noise();

    auto add_host = [&](HostFiles& h, HostRole role) {
      HostLogs logs;
      logs.role = role;
      logs.ip = h.ip;
      logs.firewall = h.label + "/pfirewall.log";
      logs.security = h.label + "/security.txt";
      logs.system = h.label + "/system.txt";
      logs.application = h.label + "/application.txt";
      out.files[*logs.firewall] = h.firewall.finish(kFirewallHeader, "\n");
      out.files[*logs.security] = h.security.finish("", "\n");
      out.files[*logs.system] = h.system.finish("", "\n");
      out.files[*logs.application] = h.application.finish("", "\n");
      out.corpus.hosts[h.label] = std::move(logs);
    };
    add_host(attacker_, HostRole::SuspectedAttacker);
    for (auto& v : victims_) add_host(v, HostRole::DeclaredVictim);
    out.corpus.ids_alert = "ids/alert.log";
    out.files[*out.corpus.ids_alert] = ids_.finish("", "\n\n");

    out.files[std::string(kCorpusManifestName)] = render_corpus_manifest(out.corpus);
    out.files[std::string(kTruthManifestName)] = dump_json(truth_json(out));
    return out;
  }

 private:
  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  template <class T>
  const T& choose(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(pick(0, static_cast<long>(items.size()) - 1))];
  }

  std::uint16_t take_port() {
    std::uint16_t p = next_port_++;
    if (next_port_ > 5000) next_port_ = 1100;
    return p;
  }

  std::vector<IpAddress> sweep_targets() const {
    if (!c_.bystander_ips.empty()) return c_.bystander_ips;
    IpAddress gw = c_.victim_ips.empty() ? c_.attacker_ip : c_.victim_ips.front();
    gw.octets[3] = 1;
    if (gw == c_.attacker_ip || std::find(c_.victim_ips.begin(), c_.victim_ips.end(), gw) != c_.victim_ips.end()) {
      return {};
    }
    return {gw};
  }

  void plant(GeneratedScenario& out) {
    const IpAddress a = c_.attacker_ip;
    const auto& fp_tcp = std::string("TCP");

    // Worm launch on the attacker host.
    Timestamp launch = c_.base_ts.shifted(-kProcLead);
    std::string user = attacker_.computer + "\\operator";
    attacker_.security.add(
        launch, event_text(launch, "Security", "Success Audit", "Detailed Tracking", 592, user, attacker_.computer,
                           {"A new process has been created:", "New Process ID:\t" + std::to_string(pick(600, 4000)),
                            "Image File Name:\tC:\\Documents and Settings\\operator\\Desktop\\Blaster.exe",
                            "Creator Process ID:\t" + std::to_string(pick(300, 1200)), "User Name:\toperator",
                            "Domain:\t" + attacker_.computer, "Logon ID:\t(0x0,0x17744)"}));

    // Per-victim connection pairs.
    struct Ports {
      std::uint16_t attempt, exploit;
    };
    std::vector<Ports> ports(victims_.size());
    for (auto& p : ports) p.attempt = take_port();

    auto sweep = sweep_targets();
    std::vector<std::uint16_t> sweep_ports;
    for (std::size_t k = 0; k < sweep.size(); ++k) sweep_ports.push_back(take_port());
    for (auto& p : ports) p.exploit = take_port();

    for (std::size_t i = 0; i < victims_.size(); ++i) {
      HostFiles& v = victims_[i];
      const auto t = victim_times(c_, i);
      const Ports& p = ports[i];

      attacker_.firewall.add(t.attacker_attempt,
                             render_firewall_line(fw(t.attacker_attempt, FirewallAction::Kind::Open, fp_tcp, a, v.ip,
                                                     p.attempt, 135, dashes(3))));
      attacker_.firewall.add(t.attacker_exploit,
                             render_firewall_line(fw(t.attacker_exploit, FirewallAction::Kind::Open, fp_tcp, a, v.ip,
                                                     p.exploit, 4444, dashes(3))));
      attacker_.firewall.add(t.attacker_close_attempt,
                             render_firewall_line(fw(t.attacker_close_attempt, FirewallAction::Kind::Close, fp_tcp, a,
                                                     v.ip, p.attempt, 135, dashes(3))));
      attacker_.firewall.add(t.attacker_close_exploit,
                             render_firewall_line(fw(t.attacker_close_exploit, FirewallAction::Kind::Close, fp_tcp, a,
                                                     v.ip, p.exploit, 4444, dashes(3))));

      v.firewall.add(t.victim_attempt, render_firewall_line(fw(t.victim_attempt, FirewallAction::Kind::OpenInbound,
                                                               fp_tcp, a, v.ip, p.attempt, 135, dashes(9))));
      auto exploit_kind = c_.victim_drop_4444 ? FirewallAction::Kind::Drop : FirewallAction::Kind::Open;
      v.firewall.add(t.victim_exploit,
                     render_firewall_line(fw(t.victim_exploit, exploit_kind, fp_tcp, a, v.ip, p.exploit, 4444,
                                             {"48", "S", std::to_string(pick(100000000, 999999999)), "0", "64240",
                                              "-", "-", "-", "-"})));

      // Consequences on the victim host.
      Timestamp fault = t.victim_exploit.shifted(-seconds{1});
      v.application.add(fault, event_text(fault, "Application Error", "Error", "(100)", 1000, "N/A", v.computer,
                                          {"Faulting application svchost.exe, version 5.1.2600.0, faulting module "
                                           "unknown, version 0.0.0.0, fault address 0x00000000."}));
      v.application.add(t.crash, event_text(t.crash, "DrWatson", "Information", "None", 4097, "N/A", v.computer,
                                            {"The application,",
                                             "C:\\WINDOWS\\system32\\svchost.exe, generated an application error "
                                             "The error occurred on " +
                                                 us_date(t.crash) + " @ " + t.crash.time_string(false) +
                                                 ".441 The exception generated was c0000005 at address 0018759F "
                                                 "(<nosymbols>)"}));
      v.system.add(t.crash,
                   event_text(t.crash, "Service Control Manager", "Error", "None", 7031, "N/A", v.computer,
                              {"The Remote Procedure Call (RPC) service terminated unexpectedly. It has done this 1 "
                               "time(s). The following corrective action will be taken in 60000 milliseconds: "
                               "Reboot the machine."}));
      v.system.add(t.crash,
                   event_text(t.crash, "USER32", "Information", "None", 1074, "NT AUTHORITY\\SYSTEM", v.computer,
                              {"The process winlogon.exe has initiated the restart of " + v.computer +
                                   " for the following reason: No title for this reason could be found",
                               "Minor Reason: 0xff", "Shutdown Type: reboot",
                               "Comment: Windows must now restart because the Remote Procedure Call (RPC) service "
                               "terminated unexpectedly"}));
      Timestamp com = t.crash.shifted(seconds{61});
      v.application.add(com, event_text(com, "EventSystem", "Error", "(50)", 4609, "N/A", v.computer,
                                        {"The COM+ Event System detected a bad return code during its internal "
                                         "processing. HRESULT was 800706BA from line 44 of eventsystemobj.cpp."}));
      v.security.add(t.shutdown, event_text(t.shutdown, "Security", "Success Audit", "System Event", 513,
                                            "NT AUTHORITY\\SYSTEM", v.computer,
                                            {"Windows is shutting down. All logon sessions will be terminated by "
                                             "this shutdown."}));
      v.system.add(t.shutdown, event_text(t.shutdown, "EventLog", "Information", "None", 6006, "N/A", v.computer,
                                          {"The Event log service was stopped."}));

      PlantedAttack pa;
      pa.attacker_ip = a;
      pa.victim_ip = v.ip;
      pa.victim_host = v.label;
      pa.t_attempt = t.victim_attempt;
      pa.t_exploit = t.victim_exploit;
      pa.attacker_t_attempt = t.attacker_attempt;
      pa.attacker_t_exploit = t.attacker_exploit;
      pa.src_port_attempt = Port{p.attempt};
      pa.src_port_exploit = Port{p.exploit};
      pa.exploit_action = FirewallAction{exploit_kind}.to_string();
      out.planted.push_back(std::move(pa));
    }

    // Sweep of the rest of the subnet: short-lived probes plus the IDS portsweep alerts.
    Timestamp sweep_start = c_.base_ts.shifted(-c_.sweep_lead);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      Timestamp open = c_.base_ts.shifted(seconds{static_cast<long>(victims_.size() + k)});
      Timestamp close = open.shifted(seconds{60});
      attacker_.firewall.add(open, render_firewall_line(fw(open, FirewallAction::Kind::Open, fp_tcp, a, sweep[k],
                                                           sweep_ports[k], 135, dashes(3))));
      attacker_.firewall.add(close, render_firewall_line(fw(close, FirewallAction::Kind::Close, fp_tcp, a, sweep[k],
                                                            sweep_ports[k], 135, dashes(3))));

      Duration offset = c_.sweep_lead * static_cast<long>(k) / static_cast<long>(sweep.size());
      Timestamp at = sweep_start.shifted(offset + Duration{pick(0, 999'999)});
      if (at.date != c_.base_ts.date) at = sweep_start;
      IdsAlert alert = ids_alert(122, 3, 0, "(portscan) TCP Portsweep", 3, at, a, sweep[k]);
      alert.header_fields = {{"PROTO", "255"},
                             {"TTL", "0"},
                             {"TOS", "0x0"},
                             {"ID", std::to_string(pick(0, 65535))},
                             {"IpLen", "20"},
                             {"DgmLen", std::to_string(pick(150, 170))}};
      ids_.add(at, render_ids_block(alert));
    }
  }

  // Benign traffic and housekeeping records. None of these can satisfy a fingerprint:
  // ports 135 and 4444 never appear and no message carries a fingerprint fragment.
  void add_noise() {
    if (c_.noise_lines == 0) return;
    Timestamp lo, hi;
    if (c_.attack) {
      std::tie(lo, hi) = attack_span(c_);
      lo = lo.shifted(-seconds{1800});
      hi = hi.shifted(seconds{1800});
    } else {
      lo = c_.base_ts.shifted(-seconds{3600});
      hi = c_.base_ts.shifted(seconds{3600});
    }
    Timestamp day_start{c_.base_ts.date, 0};
    Timestamp day_end{c_.base_ts.date, Timestamp::kMicrosPerDay - Timestamp::kMicrosPerSecond};
    lo = std::max(lo, day_start);
    hi = std::min(hi, day_end);
    const long span_s = (hi.since_epoch() - lo.since_epoch()).count() / Timestamp::kMicrosPerSecond;

    std::vector<HostFiles*> hosts{&attacker_};
    for (auto& v : victims_) hosts.push_back(&v);

    for (std::size_t n = 0; n < c_.noise_lines; ++n) {
      Timestamp ts = lo.shifted(seconds{pick(0, span_s)});
      HostFiles& h = *hosts[static_cast<std::size_t>(pick(0, static_cast<long>(hosts.size()) - 1))];
      switch (pick(0, 4)) {
        case 0:
        case 1: noise_firewall(h, ts); break;
        case 2: noise_event(h, ts); break;
        case 3: noise_event(h, ts); break;
        default: noise_ids(ts); break;
      }
    }
  }

  IpAddress external() {
    return IpAddress{{static_cast<std::uint8_t>(choose(std::vector<int>{10, 172, 203})),
                      static_cast<std::uint8_t>(pick(16, 31)), static_cast<std::uint8_t>(pick(0, 255)),
                      static_cast<std::uint8_t>(pick(1, 254))}};
  }

  std::uint16_t ephemeral() { return static_cast<std::uint16_t>(pick(1025, 5000)); }

  void noise_firewall(HostFiles& h, const Timestamp& ts) {
    using K = FirewallAction::Kind;
    FirewallEntry e;
    switch (pick(0, 6)) {
      case 0: e = fw(ts, K::Open, "TCP", h.ip, external(), ephemeral(), choose(std::vector<std::uint16_t>{80, 443, 8080}), dashes(3)); break;
      case 1: e = fw(ts, K::Close, "TCP", h.ip, external(), ephemeral(), choose(std::vector<std::uint16_t>{80, 443}), dashes(3)); break;
      case 2: e = fw(ts, K::Open, "UDP", h.ip, external(), ephemeral(), 53, dashes(3)); break;
      case 3: e = fw(ts, K::Drop, "UDP", external(), h.ip, choose(std::vector<std::uint16_t>{137, 138}), choose(std::vector<std::uint16_t>{137, 138}), {"229", "-", "-", "-", "-", "-", "-", "-", "RECEIVE"}); break;
      case 4: e = fw(ts, K::Drop, "TCP", external(), h.ip, ephemeral(), 445, {"48", "S", std::to_string(pick(1000000, 999999999)), "0", "65535", "-", "-", "-", "RECEIVE"}); break;
      case 5: e = fw(ts, K::Drop, "ICMP", external(), h.ip, std::nullopt, std::nullopt, {"60", "-", "-", "-", "-", "8", "0", "-", "RECEIVE"}); break;
      default: e = fw(ts, K::OpenInbound, "TCP", external(), h.ip, ephemeral(), 139, dashes(9)); break;
    }
    h.firewall.add(ts, render_firewall_line(e));
  }

  void noise_event(HostFiles& h, const Timestamp& ts) {
    const std::string& pc = h.computer;
    switch (pick(0, 7)) {
      case 0:
        h.system.add(ts, event_text(ts, "Service Control Manager", "Information", "None", 7036, "N/A", pc,
                                    {"The " + choose(std::vector<std::string>{"Windows Installer", "BITS",
                                                                              "Application Management"}) +
                                     " service entered the " + choose(std::vector<std::string>{"running", "stopped"}) +
                                     " state."}));
        break;
      case 1:
        h.system.add(ts, event_text(ts, "W32Time", "Information", "None", 35, "N/A", pc,
                                    {"The time service is now synchronizing the system time with the time source "
                                     "ntp.local."}));
        break;
      case 2:
        h.system.add(ts, event_text(ts, "Tcpip", "Warning", "None", 4226, "N/A", pc,
                                    {"TCP/IP has reached the security limit imposed on the number of concurrent TCP "
                                     "connect attempts."}));
        break;
      case 3:
        h.application.add(ts, event_text(ts, "SecurityCenter", "Information", "None", 1800, "N/A", pc,
                                         {"The Windows Security Center Service has started."}));
        break;
      case 4:
        h.application.add(ts, event_text(ts, "Userenv", "Warning", "None", 1517, "NT AUTHORITY\\SYSTEM", pc,
                                         {"Windows saved user " + pc + "\\operator registry while an application "
                                          "or service was still using the registry during log off.",
                                          "The memory used by the user's registry has not been freed."}));
        break;
      case 5:
        h.security.add(ts, event_text(ts, "Security", "Success Audit", "Logon/Logoff", 528, pc + "\\operator", pc,
                                      {"Successful Logon:", "User Name:\toperator", "Domain:\t" + pc,
                                       "Logon Type:\t" + std::to_string(choose(std::vector<int>{2, 3, 7, 10}))}));
        break;
      case 6:
        h.security.add(ts, event_text(ts, "Security", "Success Audit", "Logon/Logoff", 538, pc + "\\operator", pc,
                                      {"User Logoff:", "User Name:\toperator", "Domain:\t" + pc}));
        break;
      default:
        h.security.add(ts, event_text(ts, "Security", "Success Audit", "Detailed Tracking", 593, pc + "\\operator",
                                      pc,
                                      {"A process has exited:", "Process ID:\t" + std::to_string(pick(600, 4000)),
                                       "Image File Name:\tC:\\WINDOWS\\system32\\notepad.exe"}));
        break;
    }
  }

  void noise_ids(const Timestamp& second) {
    Timestamp ts = second.shifted(Duration{pick(0, 999'999)});
    IpAddress src = external();
    IpAddress dst = victims_.empty() ? attacker_.ip : choose(c_.victim_ips);
    IdsAlert a;
    if (pick(0, 1) == 0) {
      a = ids_alert(1, 1917, 6, "SCAN UPnP service discover attempt", 3, ts, src, dst);
      a.header_fields = {{"classification", "Detection of a Network Scan"},
                         {"src_port", std::to_string(ephemeral())},
                         {"dst_port", "1900"},
                         {"PROTO", "UDP"},
                         {"TTL", "1"},
                         {"TOS", "0x0"},
                         {"ID", std::to_string(pick(0, 65535))},
                         {"IpLen", "20"},
                         {"DgmLen", "161"}};
    } else {
      a = ids_alert(1, 384, 5, "ICMP PING", 3, ts, src, dst);
      a.header_fields = {{"classification", "Misc activity"},
                         {"PROTO", "ICMP"},
                         {"TTL", "128"},
                         {"TOS", "0x0"},
                         {"ID", std::to_string(pick(0, 65535))},
                         {"IpLen", "20"},
                         {"DgmLen", "60"},
                         {"Type", "8"},
                         {"Code", "0"}};
    }
    ids_.add(ts, render_ids_block(a));
  }

  Json truth_json(const GeneratedScenario& out) const {
    Json j;
    j["generator"] = "blastertrace scenario";
    j["seed"] = c_.seed;
    auto ips = [](const std::vector<IpAddress>& v) {
      Json a = Json::array();
      for (const auto& ip : v) a.push_back(ip.to_string());
      return a;
    };
    auto secs = [](Duration d) { return d.count() / Timestamp::kMicrosPerSecond; };
    j["config"] = {{"attacker_ip", c_.attacker_ip.to_string()},
                   {"victim_ips", ips(c_.victim_ips)},
                   {"bystander_ips", ips(c_.bystander_ips)},
                   {"base_ts", c_.base_ts.to_string()},
                   {"sweep_lead", secs(c_.sweep_lead)},
                   {"exploit_delay", secs(c_.exploit_delay)},
                   {"crash_delay", secs(c_.crash_delay)},
                   {"victim_drop_4444", c_.victim_drop_4444},
                   {"noise_lines", c_.noise_lines},
                   {"attack", c_.attack}};
    Json planted = Json::array();
    for (const auto& p : out.planted) {
      planted.push_back({{"attacker", p.attacker_ip.to_string()},
                         {"victim", p.victim_ip.to_string()},
                         {"victim_host", p.victim_host},
                         {"t_attempt", p.t_attempt.to_string()},
                         {"t_exploit", p.t_exploit.to_string()},
                         {"attacker_t_attempt", p.attacker_t_attempt.to_string()},
                         {"attacker_t_exploit", p.attacker_t_exploit.to_string()},
                         {"exploit_action", p.exploit_action},
                         {"ports",
                          {{"src_attempt", p.src_port_attempt.value},
                           {"src_exploit", p.src_port_exploit.value},
                           {"dst_attempt", 135},
                           {"dst_exploit", 4444}}}});
    }
    j["planted"] = std::move(planted);
    return j;
  }

  const ScenarioConfig& c_;
  std::mt19937_64 rng_;
  HostFiles attacker_;
  std::vector<HostFiles> victims_;
  FileBuilder ids_;
  std::uint16_t next_port_ = 1100;
};

}  // namespace

GeneratedScenario generate(const ScenarioConfig& config) {
  config.validate();
  return Generator(config).run();
}

FileReader GeneratedScenario::reader() const {
  return [files = files](const std::string& path) -> std::optional<std::string> {
    auto it = files.find(path);
    if (it == files.end()) return std::nullopt;
    return it->second;
  };
}

void write_scenario(const GeneratedScenario& scenario, const std::filesystem::path& out_dir) {
  for (const auto& [rel, content] : scenario.files) {
    auto path = out_dir / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw InputError(path.string());
  }
}

}  // namespace blastertrace
