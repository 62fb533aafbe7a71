#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bullen/bounds.hpp"

namespace bullen {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { json, csv };

ReportFormat parse_format(const std::string& name);
const char* to_string(ReportFormat f);

/// Proposition groups known to the suite, in canonical order:
/// thmA eq1 prop2 remark1 prop3 zhuk prop4 prop5 prop6 prop7 prop8 c1crude.
const std::vector<std::string>& prop_ids();

struct RunConfig {
  Interval interval{0.0, 1.0};
  std::vector<std::string> corpus_filter{"all"};
  std::vector<std::string> props{"all"};
  std::vector<int> k_values{2, 4, 8, 16};
  std::vector<std::size_t> n_values{1, 2, 4, 8};
  std::size_t grid_n = kDefaultGrid;
  double tol = 1e-8;  ///< verdict tolerance factor
  std::uint64_t seed = 0;
  std::size_t random_partitions = 20;  ///< per n > 1, seeds seed .. seed+count-1
  std::string corpus_file;             ///< empty: builtins on `interval`
  std::string output_path;
  ReportFormat format = ReportFormat::json;
};

struct Summary {
  std::size_t total = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t fails_normal_confidence = 0;
  std::size_t low_confidence = 0;
  std::size_t skipped = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct Report {
  RunConfig config;
  std::vector<BoundVerdict> verdicts;
  Summary summary;
  std::string tool_version = kToolVersion;
  double wall_time = 0.0;
};

/// Throws ConfigError for unusable settings (k < 2, n = 0, unknown ids, ...).
/// Returns the filtered corpus the run will use.
std::vector<CorpusFunction> resolve_corpus(const RunConfig& cfg);

/// Every selected (function, proposition) pair yields verdicts for each
/// parameter choice, or one skipped entry when the function's smoothness
/// class rules the proposition out. Partition-based groups sweep, for each
/// n, the uniform partition plus `random_partitions` seeded random ones
/// (n > 1 only). Output is sorted by (prop_id, function_id, params).
Report run_suite(const RunConfig& cfg);

Summary summarize(const std::vector<BoundVerdict>& verdicts);

/// 0 when no verdict fails at normal confidence, 1 otherwise.
int exit_code(const Report& r);

nlohmann::json report_to_json(const Report& r);
void write_json(const Report& r, std::ostream& out);
void write_csv(const Report& r, std::ostream& out);

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// std::runtime_error naming the path on I/O failure.
void emit_report(const Report& r, ReportFormat format, const std::string& path);

}  // namespace bullen
