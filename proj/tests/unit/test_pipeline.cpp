#include "doctest.h"

#include <algorithm>

#include "blastertrace/kv_config.hpp"
#include "blastertrace/parsers.hpp"
#include "blastertrace/pipeline.hpp"
#include "blastertrace/report_format.hpp"
#include "blastertrace/scenario_gen.hpp"
#include "blastertrace/text_input.hpp"
#include "support/data.hpp"

using namespace blastertrace;
using std::chrono::seconds;

namespace {

Timestamp at(int h, int mi, int s, std::int64_t us = 0) { return *Timestamp::make(Date{2009, 5, 7}, h, mi, s, us); }

const IpAddress kVictim{{192, 168, 3, 13}};
const IpAddress kAttacker{{192, 168, 2, 150}};

LogCorpus testbed_corpus() { return parse_corpus_manifest(testdata::testbed("corpus.manifest")); }
FileReader testbed_reader() { return disk_reader(testdata::path("testbed_corpus")); }

TraceReport trace_testbed(const TraceOptions& options = {}) {
  const IpAddress victims[] = {kVictim};
  return run_full_trace(testbed_corpus(), victims, {}, options, testbed_reader());
}

// Reader that serves the bundled files with overrides.
FileReader patched_reader(std::map<std::string, std::string> overrides) {
  return [base = testbed_reader(), overrides = std::move(overrides)](const std::string& path) {
    auto it = overrides.find(path);
    if (it != overrides.end()) return std::optional<std::string>(it->second);
    return base(path);
  };
}

std::string shift_firewall_file(const std::string& text, Duration d) {
  std::string out;
  for (auto e : parse_firewall_log(text).records) {
    e.ts = e.ts.shifted(d);
    out += render_firewall_line(e) + "\n";
  }
  return out;
}

const Finding* find_stage(const CandidateReport& c, Stage s) {
  for (const auto& f : c.findings) {
    if (f.stage == s) return &f;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("pipeline: bundled corpus end to end") {
  auto report = trace_testbed();
  REQUIRE(report.candidate_count() == 1);
  REQUIRE(report.attackers.size() == 1);
  CHECK(report.attackers[0].attacker_ip == kAttacker);
  const CandidateReport& c = report.attackers[0].candidates[0];
  CHECK(c.victim_host == "ayu");
  CHECK(c.attacker_host == std::optional<std::string>("rahayu2"));

  const auto& x = c.context;
  CHECK(x.src_port_attempt == Port{3284});
  CHECK(x.src_port_exploit == Port{3297});
  CHECK(x.t_fw1 == at(14, 13, 34));
  CHECK(x.t_fw2 == at(14, 14, 1));
  CHECK(x.t_app1 == at(14, 19, 0));
  CHECK(x.t_sys == at(14, 19, 0));
  CHECK(x.t_sec == at(14, 20, 3));
  CHECK(x.t_fw1_y == at(14, 13, 33));
  CHECK(x.t_fw2_y == at(14, 13, 56));
  CHECK(x.t_sec_y == at(14, 13, 8));
  CHECK(x.t_ids == at(14, 10, 56, 381141));

  CHECK(c.verdict.exploit_status == ExploitStatus::Attempted);
  CHECK(c.verdict.attacker_side == AttackerSide::Verified);
  CHECK(c.verdict.ids == IdsVerdict::PortsweepOnly);
  CHECK(c.verdict.attempt_ts == at(14, 13, 34));

  for (Stage s : {Stage::FwAttempt, Stage::FwExploit, Stage::AppError, Stage::RpcCrash, Stage::Shutdown,
                  Stage::AttackerFwAttempt, Stage::AttackerFwExploit, Stage::AttackerProcCreated,
                  Stage::IdsCorroboration}) {
    CAPTURE(to_string(s));
    CHECK(c.stages.at(s) == StageStatus::Found);
  }
  CHECK(c.stages.at(Stage::AttackerShutdown) == StageStatus::Absent);

  REQUIRE(find_stage(c, Stage::AppError));
  CHECK(find_stage(c, Stage::AppError)->log == "victim/application.txt");
  CHECK(find_stage(c, Stage::RpcCrash)->log == "victim/system.txt");
  CHECK(find_stage(c, Stage::Shutdown)->log == "victim/security.txt");
  CHECK(find_stage(c, Stage::AttackerProcCreated)->log == "attacker/security.txt");

  // Findings run in timestamp order.
  CHECK(std::is_sorted(c.findings.begin(), c.findings.end(),
                       [](const Finding& a, const Finding& b) { return a.ts < b.ts; }));
  CHECK(c.findings.front().stage == Stage::IdsCorroboration);

  for (const auto& f : report.files) CHECK(f.issues == 0);
  CHECK(report.files.size() == 7);
}

TEST_CASE("pipeline: every finding is a verbatim excerpt at its reported line") {
  auto report = trace_testbed();
  for (const auto* c : report.all_candidates()) {
    for (const auto& f : c->findings) {
      CAPTURE(f.log);
      std::string text = testdata::testbed(f.log);
      auto lines = split_lines(text);
      REQUIRE(f.line >= 1);
      REQUIRE(f.line <= lines.size());
      // The evidence starts exactly at line f.line.
      std::string from_line;
      for (std::size_t i = f.line - 1; i < lines.size(); ++i) from_line += std::string(lines[i]) + "\n";
      CHECK(from_line.rfind(f.evidence, 0) == 0);
    }
  }
}

TEST_CASE("pipeline: victim logs alone leave the attacker side unverified") {
  auto corpus = parse_corpus_manifest(
      "[host ayu]\nrole = victim\nip = 192.168.3.13\nfirewall = victim/pfirewall.log\n");
  const IpAddress victims[] = {kVictim};
  auto report = run_full_trace(corpus, victims, {}, {}, testbed_reader());
  REQUIRE(report.candidate_count() == 1);
  const auto& c = *report.all_candidates()[0];
  CHECK_FALSE(c.attacker_host);
  CHECK(c.verdict.attacker_side == AttackerSide::Unverified);
  CHECK(c.verdict.ids == IdsVerdict::None);
  CHECK(c.verdict.exploit_status == ExploitStatus::Attempted);
  for (Stage s : {Stage::AppError, Stage::RpcCrash, Stage::Shutdown, Stage::AttackerFwAttempt,
                  Stage::AttackerFwExploit, Stage::AttackerProcCreated, Stage::AttackerShutdown,
                  Stage::IdsCorroboration}) {
    CAPTURE(to_string(s));
    CHECK(c.stages.at(s) == StageStatus::Unverified);
  }
  CHECK(c.findings.size() == 2);
}

TEST_CASE("pipeline: a missing system log marks the rest of the chain unverified") {
  auto corpus = testbed_corpus();
  corpus.hosts.at("ayu").system.reset();
  const IpAddress victims[] = {kVictim};
  auto report = run_full_trace(corpus, victims, {}, {}, testbed_reader());
  const auto& c = *report.all_candidates().at(0);
  CHECK(c.stages.at(Stage::AppError) == StageStatus::Found);
  CHECK(c.stages.at(Stage::RpcCrash) == StageStatus::Unverified);
  CHECK(c.stages.at(Stage::Shutdown) == StageStatus::Unverified);
  CHECK(c.verdict.attacker_side == AttackerSide::Verified);
}

TEST_CASE("pipeline: zero slack and zero window") {
  TraceOptions opt;
  opt.slack = seconds{0};
  opt.window = seconds{0};
  auto report = trace_testbed(opt);
  const auto& c = *report.all_candidates().at(0);
  CHECK(c.verdict.ids == IdsVerdict::None);
  CHECK(c.stages.at(Stage::IdsCorroboration) == StageStatus::Absent);
  CHECK(c.stages.at(Stage::AttackerProcCreated) == StageStatus::Absent);
  CHECK_FALSE(find_stage(c, Stage::AttackerProcCreated));
  CHECK(c.verdict.attacker_side == AttackerSide::Verified);
}

TEST_CASE("pipeline: skew realigns a host clock that runs ahead") {
  const Duration hour = seconds{3600};
  auto reader = patched_reader(
      {{"attacker/pfirewall.log", shift_firewall_file(testdata::testbed("attacker/pfirewall.log"), hour)}});
  const IpAddress victims[] = {kVictim};
  auto plain = run_full_trace(testbed_corpus(), victims, {}, {}, reader);
  CHECK(plain.all_candidates().at(0)->verdict.attacker_side == AttackerSide::Unverified);

  TraceOptions opt;
  opt.skew = -hour;
  auto fixed = run_full_trace(testbed_corpus(), victims, {}, opt, reader);
  const auto& c = *fixed.all_candidates().at(0);
  CHECK(c.verdict.attacker_side == AttackerSide::Verified);
  CHECK(c.context.t_fw1_y == at(14, 13, 33));
  // Skew also moves the IDS clock, which here is correct already.
  CHECK(c.verdict.ids == IdsVerdict::None);
}

TEST_CASE("pipeline: errors") {
  const IpAddress victims[] = {kVictim};
  CHECK_THROWS_AS(run_full_trace(testbed_corpus(), std::span<const IpAddress>{}, {}, {}, testbed_reader()), ConfigError);

  auto broken = testbed_corpus();
  broken.hosts.at("rahayu2").security = "attacker/missing.txt";
  try {
    run_full_trace(broken, victims, {}, {}, testbed_reader());
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.path() == "attacker/missing.txt");
  }

  BlasterFingerprint fp;
  fp.msg_shutdown.clear();
  CHECK_THROWS_AS(run_full_trace(testbed_corpus(), victims, fp, {}, testbed_reader()), ConfigError);
}

TEST_CASE("pipeline: unknown victims and duplicate requests") {
  const IpAddress victims[] = {kVictim, IpAddress{{10, 9, 9, 9}}, kVictim};
  auto report = run_full_trace(testbed_corpus(), victims, {}, {}, testbed_reader());
  CHECK(report.victims_requested.size() == 2);
  REQUIRE(report.victims.size() == 2);
  CHECK(report.victims[0].candidates == 1);
  CHECK_FALSE(report.victims[1].host);
  CHECK(report.candidate_count() == 1);
}

TEST_CASE("pipeline: parse issues are counted, not fatal") {
  auto reader = patched_reader({{"victim/pfirewall.log", testdata::testbed("victim/pfirewall.log") + "junk line\n"}});
  const IpAddress victims[] = {kVictim};
  auto report = run_full_trace(testbed_corpus(), victims, {}, {}, reader);
  CHECK(report.candidate_count() == 1);
  auto it = std::find_if(report.files.begin(), report.files.end(),
                         [](const FileSummary& f) { return f.path == "victim/pfirewall.log"; });
  REQUIRE(it != report.files.end());
  CHECK(it->issues == 1);
  CHECK(it->records == 2);
}

TEST_CASE("pipeline: JSON output is byte-identical across runs") {
  CHECK(dump_json(to_json(trace_testbed())) == dump_json(to_json(trace_testbed())));
  auto j = to_json(trace_testbed());
  CHECK(j.contains("attackers"));
  CHECK(j.contains("files"));
}

TEST_CASE("pipeline: generated two-victim corpus recovers both chains") {
  ScenarioConfig cfg;
  cfg.victim_ips = {IpAddress{{192, 168, 3, 13}}, IpAddress{{192, 168, 3, 14}}};
  cfg.bystander_ips = {IpAddress{{192, 168, 3, 1}}, IpAddress{{192, 168, 3, 34}}};
  cfg.noise_lines = 400;
  cfg.seed = 7;
  cfg.victim_drop_4444 = false;
  auto scenario = generate(cfg);
  auto report = run_full_trace(scenario.corpus, cfg.victim_ips, {}, {}, scenario.reader());
  REQUIRE(report.candidate_count() == 2);
  for (const auto& planted : scenario.planted) {
    auto all = report.all_candidates();
    auto it = std::find_if(all.begin(), all.end(), [&](const CandidateReport* c) {
      return c->verdict.victim_ip == planted.victim_ip;
    });
    REQUIRE(it != all.end());
    const auto& c = **it;
    CHECK(c.victim_host == planted.victim_host);
    CHECK(c.verdict.attacker_ip == planted.attacker_ip);
    CHECK(c.context.t_fw1 == planted.t_attempt);
    CHECK(c.context.t_fw2 == planted.t_exploit);
    CHECK(c.context.t_fw1_y == planted.attacker_t_attempt);
    CHECK(c.context.t_fw2_y == planted.attacker_t_exploit);
    CHECK(c.context.src_port_attempt == planted.src_port_attempt);
    CHECK(c.context.src_port_exploit == planted.src_port_exploit);
    CHECK(c.verdict.exploit_status == ExploitStatus::Established);
    CHECK(c.verdict.attacker_side == AttackerSide::Verified);
    CHECK(c.verdict.ids == IdsVerdict::PortsweepOnly);
    CHECK(c.context.t_sec_y);
    CHECK(c.stages.at(Stage::Shutdown) == StageStatus::Found);
  }
  for (const auto& f : report.files) CHECK(f.issues == 0);
}
