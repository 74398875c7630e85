#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lll/io.hpp"
#include "lll/local_gh.hpp"

namespace lll {

/// Above this many vertices a scan samples vertices unless told otherwise.
inline constexpr std::size_t kFullScanLimit = 10000;

struct ScanOptions {
  double threshold = 0.2;
  double scale_min = 1.0;
  std::optional<double> scale_max;  // default: 2 * diameter
  double scale_ratio = 1.4142135623730951;
  LocalGhOptions gh;
  /// Number of vertices to sample; nullopt scans every vertex when
  /// |V| <= kFullScanLimit and samples kFullScanLimit otherwise.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct VertexRecord {
  Vertex vertex = 0;
  std::vector<ScaleBound> bounds;
  double min_upper = 0.0;
  double max_lower = 0.0;
  double best_scale = 0.0;
  bool in_a = false;  // min_upper < threshold
};

struct ScanReport {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  Distance diameter = 0;
  double threshold = 0.2;
  std::vector<double> scales;
  std::size_t k_max = 0;
  double tail = 0.0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::vector<VertexRecord> records;  // sorted by vertex id

  /// |V| / diameter
  double c() const;
  std::size_t in_a_count() const;
  /// in_a_count / |V| for full scans, in_a_count / |sample| otherwise.
  double fraction() const;
  /// Smallest min_upper among records in A, or nullopt if A is empty.
  std::optional<double> min_upper_in_a() const;

  /// Re-thresholds an existing report; bounds are threshold-independent.
  ScanReport with_threshold(double x) const;

  nlohmann::json to_json() const;
  /// Throws FormatError on schema mismatch, including a summary fraction
  /// that disagrees with the records.
  static ScanReport from_json(const nlohmann::json& j);

  /// One row per (vertex, scale).
  void write_csv(std::ostream& out) const;
};

ScanReport run_scan(const LabeledGraph& g, const ScanOptions& options);

/// Columns of the aggregate report, in order.
inline constexpr const char* kReportColumns =
    "family,n,vertices,diameter,C,threshold,fraction,min_upper_in_A";

/// One aggregate CSV row (no trailing newline) for a scan report.
std::string report_row(const ScanReport& report);

}  // namespace lll
