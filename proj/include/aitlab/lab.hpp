// Experiment orchestration: configuration, domain caching and the claim
// suites behind `aitlab report`.
#pragma once

#include "aitlab/complexity.hpp"
#include "aitlab/enumeration.hpp"
#include "aitlab/statistics.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aitlab {

enum class ReportFormat { Csv, Json };

struct LabConfig {
  std::string machine{kMachineVersion};
  Budgets budgets{};
  PlainBudgets plain{};
  std::uint32_t n_min = 4;
  std::uint32_t n_max = 6;
  std::uint32_t deep_n = 4;        ///< n for the per-string statistics suites
  std::int64_t slack_min = 0;
  std::int64_t slack_max = 8;
  std::uint32_t width_extra = 4;   ///< semimeasure table width is n + width_extra
  std::uint32_t max_data_width = 3;
  std::uint32_t halting_j_max = 4;  ///< H-prefix conditions of length 2^j, j <= this
  std::uint64_t random_tables = 10000;
  std::uint64_t seed = 20240601;
  std::vector<std::string> claims;  ///< empty: every claim
  std::filesystem::path cache_dir = ".aitlab-cache";
  unsigned workers = 1;
  ReportFormat format = ReportFormat::Csv;

  void validate() const;
  /// Result-affecting fields as canonical JSON text.
  std::string canonical_json() const;
  /// FNV-1a 64 of canonical_json(), as 16 hex digits.
  std::string hash() const;

  static LabConfig from_json_text(const std::string& text);
  static LabConfig from_file(const std::filesystem::path& path);
};

/// "a..b" or "a" (also "a-b").
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

enum class ClaimStatus { Pass, Fail, Vacuous, Info };
std::string to_string(ClaimStatus s);

struct ClaimTable {
  std::string id;
  std::string label;
  ClaimStatus status = ClaimStatus::Info;
  std::optional<std::int64_t> min_slack;
  std::string note;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ReportBundle {
  std::string config_hash;
  std::vector<ClaimTable> claims;

  const ClaimTable* find(const std::string& id) const;
  bool any_fail() const;
  std::string to_csv() const;
  std::string to_json() const;
};

struct ClaimInfo {
  std::string id;
  std::string label;
};
/// Every claim id, in report order.
const std::vector<ClaimInfo>& claim_catalog();

/// Thrown when a command needs domains that are not cached yet.
struct MissingDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The lab state for one configuration.
class Lab {
 public:
  explicit Lab(LabConfig cfg, std::ostream* log = nullptr);

  const LabConfig& config() const noexcept { return cfg_; }
  Universe& universe() noexcept { return universe_; }
  ModelLibrary& models() noexcept { return models_; }

  /// Enumerates and caches every base domain for the n range. Returns the cache files touched.
  std::vector<std::filesystem::path> cmd_enumerate();
  /// Runs the selected claims (all when the config lists none and `claims` is empty).
  ReportBundle cmd_report(const std::vector<std::string>& claims);
  /// Dossier for one string.
  std::string cmd_inspect(const BitString& x);
  /// bb(k), champion and time probe for k = 0..bb_cap, per n.
  std::string cmd_bb();
  /// k_x and k'_x over the slack range for every covered x in the n range.
  std::string cmd_depth();

  ClaimTable run_claim(const std::string& id);

 private:
  void require_base_domains();
  void say(const std::string& msg);
  std::vector<BitString> covered(std::uint32_t n);

  LabConfig cfg_;
  std::ostream* log_;
  Universe universe_;
  ModelLibrary models_;
};

/// Writes the bundle in the configured format to `path` ("-" for stdout is handled by the caller).
void write_bundle(const ReportBundle& b, ReportFormat f, const std::filesystem::path& path);

}  // namespace aitlab
