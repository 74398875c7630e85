#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lll/graph.hpp"

namespace lll {

/// Which 1-d coordinates are tried when building upper-bound
/// correspondences for a ball.
enum class CoordinateSource {
  local,     // ball-local geodesics: between double-sweep endpoints, and through the center
  geodesic,  // projection onto one maximal geodesic of the whole graph
  both,
};

struct LocalGhOptions {
  std::size_t k_max = 16;
  CoordinateSource source = CoordinateSource::both;
  /// Balls up to this size get exact diameters and exact correspondence
  /// distortions; larger balls use the frame bound.
  std::size_t exact_limit = 96;
  /// Random triples per summand for the line-deviation lower bound, on top
  /// of the deterministic triples through the sweep endpoints.
  std::size_t triple_budget = 1000;
  /// All-pairs distances are cached for graphs up to this many vertices.
  std::size_t matrix_limit = 4096;
};

/// Bounds on one summand d_GH((B(v, floor(k s)), d/s, v), ([-k, k], 0)).
struct SummandBound {
  std::size_t k = 0;
  Distance radius = 0;
  std::size_t ball_size = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
};

/// Interval for E_{1/s}(g, v) = sum_k 2^-k d_GH(...), truncated at k_max
/// with the tail sum_{k > k_max} 2^-k k added to the upper end.
struct ScaleBound {
  double scale = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t k_max = 0;
  double tail = 0.0;
  std::vector<SummandBound> summands;
};

nlohmann::json to_json(const ScaleBound& b);

struct ScaleScan {
  std::vector<ScaleBound> bounds;
  double min_upper = 0.0;
  double max_lower = 0.0;
  double best_scale = 0.0;  // scale attaining min_upper (first on ties)
};

/// sum_{k > k_max} 2^-k k = (k_max + 2) / 2^k_max
double tail_bound(std::size_t k_max);

/// from, from*ratio, from*ratio^2, ... up to and including `to`.
std::vector<double> geometric_scales(double from, double to, double ratio);

/// Evaluates local GH bounds for many (vertex, scale) queries on one graph,
/// sharing the global geodesic frame and cached distances. Const member
/// functions are safe to call concurrently.
class LocalGhEvaluator {
 public:
  explicit LocalGhEvaluator(const Graph& g, LocalGhOptions options = {});
  ~LocalGhEvaluator();
  LocalGhEvaluator(LocalGhEvaluator&&) noexcept;

  /// Adds an external per-vertex coordinate (in graph-distance units) as one
  /// more candidate frame.
  void set_coordinate(std::vector<double> coordinate);

  const LocalGhOptions& options() const { return options_; }

  ScaleBound evaluate(Vertex v, double scale) const;
  ScaleScan scan(Vertex v, std::span<const double> scales) const;

 private:
  struct Impl;
  LocalGhOptions options_;
  std::unique_ptr<Impl> impl_;
};

ScaleBound local_gh_to_line(const Graph& g, Vertex v, double scale, std::size_t k_max = 16,
                            std::optional<std::span<const double>> coordinate = std::nullopt);

ScaleScan scale_scan(const Graph& g, Vertex v, std::span<const double> scales, LocalGhOptions options = {},
                     std::optional<std::span<const double>> coordinate = std::nullopt);

}  // namespace lll
