#include "cli_app.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "blastertrace/corpus.hpp"
#include "blastertrace/fingerprint.hpp"
#include "blastertrace/kv_config.hpp"
#include "blastertrace/parsers.hpp"
#include "blastertrace/pipeline.hpp"
#include "blastertrace/report_format.hpp"
#include "blastertrace/scenario_gen.hpp"

namespace blastertrace::cli {

namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec) || fs::is_directory(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool write_output(const std::string& text, const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << out_path << "\n";
    return false;
  }
  return true;
}

Duration seconds_to_duration(double s) {
  return Duration{static_cast<std::int64_t>(std::llround(s * static_cast<double>(Timestamp::kMicrosPerSecond)))};
}

Duration seconds_setting(std::string_view key, std::string_view value, bool allow_negative) {
  double d = 0;
  std::string text(value);
  std::size_t used = 0;
  try {
    d = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(d)) {
    throw ConfigError(std::string(key), "expected a number of seconds, got '" + text + "'");
  }
  if (!allow_negative && d < 0) throw ConfigError(std::string(key), "must be non-negative");
  return seconds_to_duration(d);
}

struct TraceArgs {
  std::string corpus;
  std::vector<std::string> victims;
  std::string fingerprint;
  std::optional<double> slack, window, skew;
  std::string format = "json";
  std::string out;
};

int run_trace(const TraceArgs& a, std::ostream& out, std::ostream& err) {
  fs::path manifest_path = a.corpus;
  std::error_code ec;
  if (fs::is_directory(manifest_path, ec)) manifest_path /= std::string(kCorpusManifestName);
  auto manifest = read_file(manifest_path);
  if (!manifest) {
    err << "error: cannot read corpus manifest: " << manifest_path.string() << "\n";
    return kInputError;
  }

  try {
    LogCorpus corpus = parse_corpus_manifest(*manifest);

    BlasterFingerprint fp;
    TraceOptions options;
    if (!a.fingerprint.empty()) {
      auto text = read_file(a.fingerprint);
      if (!text) {
        err << "error: cannot read fingerprint config: " << a.fingerprint << "\n";
        return kInputError;
      }
      for (const auto& section : parse_kv_config(*text)) {
        if (!section.name.empty()) throw ConfigError(section.name, "fingerprint configs have no sections");
        for (const auto& e : section.entries) {
          if (apply_fingerprint_setting(fp, e.key, e.value)) continue;
          if (e.key == "slack") {
            options.slack = seconds_setting(e.key, e.value, false);
          } else if (e.key == "window") {
            options.window = seconds_setting(e.key, e.value, false);
          } else if (e.key == "skew") {
            options.skew = seconds_setting(e.key, e.value, true);
          } else {
            throw ConfigError(e.key, "unknown fingerprint setting");
          }
        }
      }
      fp.validate();
    }
    if (a.slack) options.slack = seconds_setting("--slack", std::to_string(*a.slack), false);
    if (a.window) options.window = seconds_setting("--window", std::to_string(*a.window), false);
    if (a.skew) options.skew = seconds_to_duration(*a.skew);

    std::vector<IpAddress> victims;
    for (const auto& v : a.victims) {
      auto ip = IpAddress::parse(v);
      if (!ip) throw ConfigError("--victim", "invalid IPv4 address '" + v + "'");
      victims.push_back(*ip);
    }
    if (victims.empty()) {
      for (const auto& [label, host] : corpus.hosts) {
        if (host.role == HostRole::DeclaredVictim && host.ip) victims.push_back(*host.ip);
      }
    }

    TraceReport report =
        run_full_trace(corpus, victims, fp, options, disk_reader(manifest_path.parent_path()));
    std::string text = a.format == "text" ? render_report_text(report) : dump_json(to_json(report));
    if (!write_output(text, a.out, out, err)) return kInputError;
    return report.candidate_count() > 0 ? kIdentified : kNoCandidate;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct ParseArgs {
  std::string kind;
  std::string file;
  std::string format = "json";
  std::optional<int> year;
};

int run_parse(const ParseArgs& a, std::ostream& out, std::ostream& err) {
  auto bytes = read_file(a.file);
  if (!bytes) {
    err << "error: cannot read log file: " << a.file << "\n";
    return kInputError;
  }
  Json j;
  std::size_t issues = 0;
  if (a.kind == "firewall") {
    auto r = parse_firewall_log(*bytes);
    issues = r.issues.size();
    j = outcome_to_json(r, a.kind);
  } else if (a.kind == "event") {
    auto r = parse_event_log(*bytes);
    issues = r.issues.size();
    j = outcome_to_json(r, a.kind);
  } else {
    // Alert lines carry no year; like the sensor itself, assume the current one unless told.
    int year = a.year.value_or(0);
    if (!a.year) {
      std::time_t now = std::time(nullptr);
      std::tm local{};
      localtime_r(&now, &local);
      year = local.tm_year + 1900;
    }
    auto r = parse_ids_alert_log(*bytes, year);
    issues = r.issues.size();
    j = outcome_to_json(r, a.kind);
  }
  out << dump_json(j);
  return issues == 0 ? kIdentified : kParseIssues;
}

struct GenerateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int run_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  try {
    ScenarioConfig cfg;
    if (!a.config.empty()) {
      auto text = read_file(a.config);
      if (!text) {
        err << "error: cannot read scenario config: " << a.config << "\n";
        return kInputError;
      }
      cfg = parse_scenario_config(*text);
    }
    if (a.seed) cfg.seed = *a.seed;
    GeneratedScenario scenario = generate(cfg);
    write_scenario(scenario, a.out);
    out << "wrote " << scenario.files.size() << " files to " << a.out << "; planted " << scenario.planted.size()
        << " attack chain(s)\n";
    for (const auto& p : scenario.planted) {
      out << "  " << p.attacker_ip.to_string() << " -> " << p.victim_ip.to_string() << " (" << p.victim_host
          << ") attempt " << p.t_attempt.to_string() << " exploit " << p.t_exploit.to_string() << "\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace Blaster worm infections across firewall, event and IDS logs", "blastertrace"};
  app.require_subcommand(1);

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Run the full trace over a corpus manifest");
  trace_cmd->add_option("--corpus", trace.corpus, "Corpus manifest, or a directory holding corpus.manifest")
      ->required();
  trace_cmd->add_option("--victim", trace.victims, "Victim IPv4 address (repeatable; default: declared victims)");
  trace_cmd->add_option("--fingerprint", trace.fingerprint, "Fingerprint overrides (key = value)");
  trace_cmd->add_option("--slack", trace.slack, "IDS window slack in seconds");
  trace_cmd->add_option("--window", trace.window, "Attacker process look-back in seconds");
  trace_cmd->add_option("--skew", trace.skew, "Seconds added to attacker and IDS timestamps");
  trace_cmd->add_option("--format", trace.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  trace_cmd->add_option("--out", trace.out, "Write the report here instead of stdout");

  ParseArgs parse;
  auto* parse_cmd = app.add_subcommand("parse", "Parse one log file and print records and issues");
  parse_cmd->add_option("--kind", parse.kind, "firewall, event or ids")
      ->required()
      ->check(CLI::IsMember({"firewall", "event", "ids"}));
  parse_cmd->add_option("file", parse.file, "Log file")->required();
  parse_cmd->add_option("--format", parse.format, "Output format")->check(CLI::IsMember({"json"}));
  parse_cmd->add_option("--year", parse.year, "Year for IDS alert timestamps (default: current year)")
      ->check(CLI::Range(1, 9999));

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic corpus and its ground-truth manifest");
  gen_cmd->add_option("--config", gen.config, "Scenario config (key = value)");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--seed", gen.seed, "Overrides the config seed");

  std::vector<const char*> argv{"blastertrace"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  if (*trace_cmd) return run_trace(trace, out, err);
  if (*parse_cmd) return run_parse(parse, out, err);
  return run_generate(gen, out, err);
}

}  // namespace blastertrace::cli
