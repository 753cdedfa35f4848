#include "doctest.h"

#include <filesystem>

#include <unistd.h>

#include "json.hpp"

#include "blastertrace/kv_config.hpp"
#include "blastertrace/parsers.hpp"
#include "blastertrace/pipeline.hpp"
#include "blastertrace/scenario_gen.hpp"
#include "oracle/brute_force.hpp"

using namespace blastertrace;
using std::chrono::seconds;

namespace {

template <class F>
std::string config_error_field(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

std::vector<IpAddress> ips(std::initializer_list<const char*> list) {
  std::vector<IpAddress> out;
  for (const char* s : list) out.push_back(*IpAddress::parse(s));
  return out;
}

}  // namespace

TEST_CASE("scenario config: overrides and defaults") {
  auto c = parse_scenario_config(
      "# two victims\n"
      "victim_ips = 10.0.0.2, 10.0.0.3\n"
      "attacker_ip = 10.0.0.9\n"
      "base_ts = 2010-01-02 10:00:00\n"
      "exploit_delay = 5\n"
      "noise_lines = 50\n"
      "attack = false\n"
      "seed = 99\n");
  CHECK(c.victim_ips == ips({"10.0.0.2", "10.0.0.3"}));
  CHECK(c.attacker_ip == *IpAddress::parse("10.0.0.9"));
  CHECK(c.base_ts == *Timestamp::make(Date{2010, 1, 2}, 10, 0, 0));
  CHECK(c.exploit_delay == seconds{5});
  CHECK(c.crash_delay == seconds{300});
  CHECK(c.noise_lines == 50);
  CHECK_FALSE(c.attack);
  CHECK(c.seed == 99);
  CHECK(parse_scenario_config("").victim_ips == ips({"192.168.3.13"}));
}

TEST_CASE("scenario config: errors name the field") {
  CHECK(config_error_field([] { parse_scenario_config("colour = red\n"); }) == "colour");
  CHECK(config_error_field([] { parse_scenario_config("victim_ips = 1.2.3\n"); }) == "victim_ips");
  CHECK(config_error_field([] { parse_scenario_config("victim_ips = 192.168.2.150\n"); }) == "victim_ips");
  CHECK(config_error_field([] { parse_scenario_config("victim_ips = 1.1.1.1, 1.1.1.1\n"); }) == "victim_ips");
  CHECK(config_error_field([] { parse_scenario_config("bystander_ips = 192.168.3.13\n"); }) == "bystander_ips");
  CHECK(config_error_field([] { parse_scenario_config("base_ts = tomorrow\n"); }) == "base_ts");
  CHECK(config_error_field([] { parse_scenario_config("sweep_lead = -4\n"); }) == "sweep_lead");
  CHECK(config_error_field([] { parse_scenario_config("crash_delay = 90000\n"); }) == "crash_delay");
  CHECK(config_error_field([] { parse_scenario_config("attack = sometimes\n"); }) == "attack");
  CHECK(config_error_field([] { parse_scenario_config("noise_lines = lots\n"); }) == "noise_lines");
  CHECK(config_error_field([] { parse_scenario_config("[x]\n"); }) == "x");
  // The planted chain would cross midnight.
  CHECK(config_error_field([] { parse_scenario_config("base_ts = 2009-05-07 23:55:00\n"); }) == "base_ts");
  CHECK(config_error_field([] { parse_scenario_config("base_ts = 2009-05-07 00:01:00\n"); }) == "base_ts");
  // Noise-only corpora have no timeline to fit.
  CHECK_NOTHROW(parse_scenario_config("base_ts = 2009-05-07 23:55:00\nattack = false\n"));
}

TEST_CASE("scenario: generation is deterministic in the seed") {
  ScenarioConfig cfg;
  cfg.noise_lines = 200;
  cfg.victim_ips = ips({"192.168.3.13", "192.168.3.14", "192.168.3.15"});
  cfg.seed = 5;
  auto a = generate(cfg);
  auto b = generate(cfg);
  CHECK(a.files == b.files);
  cfg.seed = 6;
  CHECK(generate(cfg).files != a.files);
}

TEST_CASE("scenario: files, manifests and planted chains agree") {
  ScenarioConfig cfg;
  cfg.victim_ips = ips({"192.168.3.13", "192.168.3.14"});
  cfg.noise_lines = 100;
  auto s = generate(cfg);
  CHECK(s.files.count(std::string(kCorpusManifestName)) == 1);
  CHECK(s.files.count(std::string(kTruthManifestName)) == 1);
  REQUIRE(s.planted.size() == 2);

  auto manifest = parse_corpus_manifest(s.files.at(std::string(kCorpusManifestName)));
  CHECK(manifest.hosts.size() == s.corpus.hosts.size());
  for (const auto& [label, host] : s.corpus.hosts) {
    for (LogKind k : {LogKind::Firewall, LogKind::Security, LogKind::System, LogKind::Application}) {
      if (host.path(k)) CHECK(s.files.count(*host.path(k)) == 1);
    }
  }

  auto truth = nlohmann::json::parse(s.files.at(std::string(kTruthManifestName)));
  CHECK(truth["seed"] == 1);
  REQUIRE(truth["planted"].size() == 2);
  CHECK(truth["planted"][0]["victim"] == "192.168.3.13");
  CHECK(truth["planted"][0]["attacker"] == "192.168.2.150");
  CHECK(truth["planted"][0]["ports"]["dst_attempt"] == 135);
  CHECK(truth["planted"][0]["ports"]["dst_exploit"] == 4444);
  CHECK(truth["planted"][0]["t_attempt"] == s.planted[0].t_attempt.to_string());

  // The exhaustive scan over the victim's firewall log sees the planted attempt.
  for (const auto& p : s.planted) {
    const auto& host = s.corpus.hosts.at(p.victim_host);
    auto fw = parse_firewall_log(s.files.at(*host.firewall)).records;
    auto cands = oracle::victim_firewall(fw, p.victim_ip);
    REQUIRE(cands.size() == 1);
    CHECK(fw[cands[0].attempt].ts == p.t_attempt);
    CHECK(fw[cands[0].attempt].src_port == p.src_port_attempt);
    REQUIRE(cands[0].exploit);
    CHECK(fw[*cands[0].exploit].ts == p.t_exploit);
    CHECK(fw[*cands[0].exploit].action.to_string() == p.exploit_action);
  }
}

TEST_CASE("property: benign corpora contain nothing that matches a fingerprint stage") {
  const BlasterFingerprint fp;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    ScenarioConfig cfg;
    cfg.attack = false;
    cfg.seed = seed;
    cfg.noise_lines = 400;
    cfg.victim_ips = ips({"192.168.3.13", "192.168.3.14"});
    auto s = generate(cfg);
    CHECK(s.planted.empty());
    for (const auto& [path, text] : s.files) {
      CAPTURE(path);
      if (path.ends_with("pfirewall.log")) {
        for (const auto& e : parse_firewall_log(text).records) {
          if (!e.dst_port_absent) {
            CHECK(e.dst_port.value != 135);
            CHECK(e.dst_port.value != 4444);
          }
          for (const auto& v : cfg.victim_ips) CHECK(oracle::victim_firewall({e}, v).empty());
        }
      } else if (path.ends_with(".txt")) {
        for (const auto& e : parse_event_log(text).records) {
          for (auto k : {MessageKind::AppError, MessageKind::RpcCrash, MessageKind::Shutdown,
                         MessageKind::ProcCreated}) {
            CHECK_FALSE(match_message(e, k, fp));
          }
          CHECK(e.message.find(fp.proc_image_hint) == std::string::npos);
        }
      } else if (path.ends_with("alert.log")) {
        for (const auto& a : parse_ids_alert_log(text, 2009).records) CHECK(a.src_ip != cfg.attacker_ip);
      }
    }
    auto report = run_full_trace(s.corpus, cfg.victim_ips, fp, {}, s.reader());
    CHECK(report.candidate_count() == 0);
  }
}

TEST_CASE("scenario: noise_lines is the number of benign records") {
  ScenarioConfig cfg;
  cfg.attack = false;
  cfg.noise_lines = 250;
  auto s = generate(cfg);
  std::size_t records = 0;
  for (const auto& [path, text] : s.files) {
    if (path.ends_with("pfirewall.log")) records += parse_firewall_log(text).records.size();
    if (path.ends_with(".txt")) records += parse_event_log(text).records.size();
    if (path.ends_with("alert.log")) records += parse_ids_alert_log(text, 2009).records.size();
  }
  CHECK(records == 250);
}

TEST_CASE("scenario: write_scenario round-trips through the disk reader") {
  ScenarioConfig cfg;
  cfg.noise_lines = 60;
  auto s = generate(cfg);
  auto dir = std::filesystem::temp_directory_path() / ("bt_scenario_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  write_scenario(s, dir);
  auto reader = disk_reader(dir);
  for (const auto& [path, text] : s.files) CHECK(reader(path) == std::optional<std::string>(text));
  auto corpus = parse_corpus_manifest(*reader(std::string(kCorpusManifestName)));
  auto report = run_full_trace(corpus, cfg.victim_ips, {}, {}, reader);
  CHECK(report.candidate_count() == 1);
  std::filesystem::remove_all(dir);
}
