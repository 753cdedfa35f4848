#pragma once

// Synthetic corpora: a Blaster infection chain planted among benign records,
// plus a ground-truth manifest of what was planted.
//
// Config format (key = value, all keys optional):
//
//   attacker_ip = 192.168.2.150
//   victim_ips = 192.168.3.13, 192.168.3.14
//   bystander_ips = 192.168.3.1, 192.168.3.34
//   base_ts = 2009-05-07 14:13:33
//   sweep_lead = 180        # seconds
//   exploit_delay = 20
//   crash_delay = 300
//   victim_drop_4444 = true
//   noise_lines = 200
//   seed = 1
//   attack = true           # false: noise only

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "blastertrace/corpus.hpp"
#include "blastertrace/log_model.hpp"
#include "blastertrace/pipeline.hpp"

namespace blastertrace {

struct ScenarioConfig {
  IpAddress attacker_ip{{192, 168, 2, 150}};
  std::vector<IpAddress> victim_ips{IpAddress{{192, 168, 3, 13}}};
  std::vector<IpAddress> bystander_ips;
  Timestamp base_ts = *Timestamp::make(Date{2009, 5, 7}, 14, 13, 33);
  Duration sweep_lead = std::chrono::seconds{180};
  Duration exploit_delay = std::chrono::seconds{20};
  Duration crash_delay = std::chrono::seconds{300};
  bool victim_drop_4444 = true;
  std::size_t noise_lines = 0;
  std::uint64_t seed = 1;
  bool attack = true;

  /// Throws ConfigError naming the offending field. Besides the basic
  /// invariants the whole attack timeline must fall on base_ts's date.
  void validate() const;
};

/// Overrides on top of the defaults. Throws ConfigError for unknown keys or bad values.
ScenarioConfig parse_scenario_config(std::string_view text);

struct PlantedAttack {
  IpAddress attacker_ip;
  IpAddress victim_ip;
  std::string victim_host;
  Timestamp t_attempt;  // victim-side OPEN-INBOUND to the attempt port
  Timestamp t_exploit;  // victim-side DROP/OPEN to the exploit port
  Timestamp attacker_t_attempt;
  Timestamp attacker_t_exploit;
  Port src_port_attempt;
  Port src_port_exploit;
  std::string exploit_action;
};

struct GeneratedScenario {
  ScenarioConfig config;
  LogCorpus corpus;                           // paths relative to the output directory
  std::map<std::string, std::string> files;   // every file to write, including both manifests
  std::vector<PlantedAttack> planted;

  /// Serves `files` without touching the disk.
  FileReader reader() const;
};

inline constexpr std::string_view kCorpusManifestName = "corpus.manifest";
inline constexpr std::string_view kTruthManifestName = "manifest.json";

/// Deterministic in the config (seed included). Throws ConfigError if the config is invalid.
GeneratedScenario generate(const ScenarioConfig& config);

/// Writes every generated file below `out_dir`, creating directories as needed.
void write_scenario(const GeneratedScenario& scenario, const std::filesystem::path& out_dir);

}  // namespace blastertrace
