#pragma once

// End-to-end tracing over a corpus: victim firewall and event logs, then the
// suspected attacker's logs, then the IDS alert log, folded into one report.

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blastertrace/corpus.hpp"
#include "blastertrace/fingerprint.hpp"
#include "blastertrace/ids_trace.hpp"
#include "blastertrace/trace_context.hpp"

namespace blastertrace {

struct TraceOptions {
  Duration slack = std::chrono::seconds{300};   // IDS window widening on both sides
  Duration window = std::chrono::seconds{300};  // attacker process-creation look-back
  Duration skew = std::chrono::seconds{0};      // added to attacker and IDS timestamps
};

/// A listed log file could not be read.
class InputError : public std::runtime_error {
 public:
  explicit InputError(std::string path)
      : std::runtime_error("cannot read log file: " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Returns file contents, or nullopt when the file cannot be read.
using FileReader = std::function<std::optional<std::string>(const std::string& path)>;

/// Reads paths relative to `base_dir` (absolute paths are used as-is).
FileReader disk_reader(std::filesystem::path base_dir);

enum class StageStatus { Found, Absent, Unverified };
enum class ExploitStatus { Established, Attempted, Absent };
enum class AttackerSide { Verified, Unverified };

std::string_view to_string(StageStatus s);
std::string_view to_string(ExploitStatus s);
std::string_view to_string(AttackerSide s);

struct Verdict {
  IpAddress attacker_ip;
  IpAddress victim_ip;
  Timestamp attempt_ts;
  ExploitStatus exploit_status = ExploitStatus::Absent;
  AttackerSide attacker_side = AttackerSide::Unverified;
  IdsVerdict ids = IdsVerdict::None;
};

struct CandidateReport {
  std::string victim_host;
  std::optional<std::string> attacker_host;
  TraceContext context;
  std::vector<Finding> findings;  // by timestamp, ties by stage order
  std::map<Stage, StageStatus> stages;
  Verdict verdict;
};

struct AttackerSection {
  IpAddress attacker_ip;
  std::vector<CandidateReport> candidates;
};

struct FileSummary {
  std::string host;  // empty for the IDS log
  LogKind kind = LogKind::Firewall;
  std::string path;
  std::size_t records = 0;
  std::size_t issues = 0;
};

struct VictimSummary {
  IpAddress ip;
  std::optional<std::string> host;
  std::size_t candidates = 0;
};

struct TraceReport {
  TraceOptions options;
  BlasterFingerprint fingerprint;
  std::vector<IpAddress> victims_requested;
  std::vector<FileSummary> files;
  std::vector<VictimSummary> victims;
  std::vector<AttackerSection> attackers;  // ascending attacker address

  std::size_t candidate_count() const;
  std::vector<const CandidateReport*> all_candidates() const;
};

/// Throws ConfigError for an invalid corpus or empty victim list, InputError for
/// unreadable files. Parse issues never abort the run; they are counted in
/// TraceReport::files.
TraceReport run_full_trace(const LogCorpus& corpus, std::span<const IpAddress> victim_ips,
                           const BlasterFingerprint& fp, const TraceOptions& options, const FileReader& reader);

}  // namespace blastertrace
