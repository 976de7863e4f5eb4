#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semistable/family.hpp"
#include "semistable/omega_stats.hpp"

namespace semistable {

/// Boxes with at most this many lattice points are enumerated in full.
inline constexpr std::uint64_t kExhaustiveBoxLimit = 2'000'000;

struct RunConfig {
  std::uint64_t box = 100;
  /// Overrides the family's own mode when set.
  std::optional<CountingMode> mode;
  std::uint64_t sample_cap = 100'000;
  std::uint64_t seed = 42;
  std::vector<std::uint32_t> probe_primes;
  /// 0: SEMISTABLE_LAB_THREADS, else the hardware concurrency.
  unsigned threads = 0;
  /// Keep one summary per evaluated point (needed for CSV output).
  bool keep_records = false;
  FactorizationBudget budget{};

  /// Throws ConfigError on B < 16 or a zero sample cap.
  void validate() const;
};

/// Compact per-point result kept by the harness.
struct RecordSummary {
  std::vector<std::int64_t> t;
  unsigned omega = 0;
  unsigned omega1 = 0;
  double normalized = 0;
  bool residual_present = false;
  ClassCounts classes{};
};

struct DistributionReport {
  std::string family;
  std::string kind;
  std::string mode;
  unsigned declared_c = 1;
  std::string cutoff;
  std::uint64_t box = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t points = 0;
  /// Points with a nonzero discriminant; the statistics are over these.
  std::uint64_t sample_size = 0;
  std::uint64_t degenerate = 0;
  /// Points where the exclusion divisor or resultant could not be formed.
  std::uint64_t undetermined = 0;
  double loglog_box = 0;
  double mean_omega = 0;
  double mean_omega1 = 0;
  double ks_distance = 0;
  std::array<double, 4> moments{};
  unsigned omega_threshold = 0;
  double threshold_proportion = 0;
  /// Share of records whose headline count is at least one.
  double positive_proportion = 0;
  double residual_fraction = 0;
  /// (headline count, number of records).
  std::vector<std::pair<unsigned, std::uint64_t>> histogram;
  ClassCounts class_totals{};
  /// Weak modes: bad primes above A occurred but every one of them divided
  /// the exclusion divisor.
  bool all_bad_primes_excluded = false;
  std::vector<ResidueDensity> densities;
  std::vector<std::string> warnings;

  bool operator==(const DistributionReport &) const = default;
};

struct RunResult {
  DistributionReport report;
  std::vector<RecordSummary> records;
};

unsigned worker_count(unsigned requested);

RunResult run_experiment(const CurveFamily &family, const RunConfig &config);

nlohmann::json to_json(const DistributionReport &r);
DistributionReport report_from_json(const nlohmann::json &j);

/// Deterministic rendering: fixed key order, no timestamps.
std::string render_report(const DistributionReport &r);
std::string render_records_csv(const std::vector<RecordSummary> &records);
/// "bin_center value" lines: normalized headline count and its density.
std::string render_histogram(const DistributionReport &r);

/// Writes report.json, histogram.dat and (if `with_csv`) records.csv into
/// `dir`. Each file goes to a temporary name first and is renamed into place
/// once everything has been written.
void write_outputs(const RunResult &result, const std::filesystem::path &dir, bool with_csv);

} // namespace semistable
