#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lll/graph.hpp"

namespace lll {

/// Finite metric space with a distinguished basepoint.
class PointedMetricSpace {
 public:
  static constexpr double kTolerance = 1e-9;

  /// Validates symmetry, zero diagonal, non-negativity and the triangle
  /// inequality up to kTolerance; throws std::invalid_argument otherwise.
  PointedMetricSpace(std::size_t n, std::vector<double> dist, std::size_t basepoint);

  /// Skips the O(n^3) triangle check; for tables that are metrics by
  /// construction (graph metrics, subsets of the line).
  static PointedMetricSpace trusted(std::size_t n, std::vector<double> dist, std::size_t basepoint);

  static PointedMetricSpace on_line(std::span<const double> points, std::size_t basepoint);

  /// Graph metric of `g` multiplied by `scale`, pointed at `basepoint`.
  static PointedMetricSpace from_graph(const Graph& g, Vertex basepoint, double scale = 1.0);

  /// Ambient metric of g restricted to the ball B(center, radius) and
  /// multiplied by `scale`; point i is the i-th entry of
  /// ball_vertices(g, center, radius) and the basepoint is the center.
  static PointedMetricSpace graph_ball(const Graph& g, Vertex center, Distance radius,
                                       double scale = 1.0);

  std::size_t size() const { return n_; }
  std::size_t basepoint() const { return base_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

  double diameter() const;
  /// max over x of d(basepoint, x)
  double radius() const;

 private:
  PointedMetricSpace() = default;
  void check_shape() const;

  std::size_t n_ = 0;
  std::size_t base_ = 0;
  std::vector<double> dist_;
};

/// Relation between the points of two pointed spaces.
struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  /// Throws std::invalid_argument unless every point of both spaces
  /// appears and the basepoint pair is present.
  void validate(const PointedMetricSpace& x, const PointedMetricSpace& y) const;
};

double distortion(const Correspondence& r, const PointedMetricSpace& x, const PointedMetricSpace& y);

/// Upper limit on either side for gh_exact_small.
inline constexpr std::size_t kExactGhLimit = 8;

/// Exact pointed Gromov-Hausdorff distance by branch and bound over pairs
/// of basepoint-preserving maps f: X -> Y, g: Y -> X. Throws
/// std::length_error above kExactGhLimit points.
double gh_exact_small(const PointedMetricSpace& x, const PointedMetricSpace& y);

inline constexpr std::size_t kDefaultTripleBudget = 20000;

double line_deviation(const PointedMetricSpace& x, std::size_t sample_budget = kDefaultTripleBudget);

/// Pointed segment [-k, k] with basepoint 0.
struct Segment {
  double half_length;

  explicit Segment(double k);
  /// Evenly spaced points -k, ..., k (odd count, so 0 is included) as a
  /// finite pointed space; used as the discretized stand-in for the segment.
  PointedMetricSpace net(std::size_t points) const;
};

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
};

/// Lower and upper bounds on d_GH((X, x0), ([-k, k], 0)).
///
/// Lower: max of (k - rad)/2, (2k - diam)/2, line_deviation/6,
/// (diam - 2k)/2, (rad - k)/2 and k/|X| (the |X| related sets of any
/// correspondence cover [-k, k] with diameters at most its distortion).
/// Upper: half the distortion of the correspondence that sends x to
/// clamp(coord(x), -k, k) and each t to the point with nearest coordinate,
/// capped by the full correspondence X x [-k, k]. Without a coordinate a
/// Busemann coordinate from a double sweep is used.
BoundInterval gh_to_segment_bounds(const PointedMetricSpace& x, double k,
                                   std::optional<std::span<const double>> coordinate = std::nullopt,
                                   std::size_t triple_budget = kDefaultTripleBudget);

/// Coordinate (d(a,x) - d(b,x))/2 recentred at the basepoint, where a is
/// farthest from the basepoint and b is farthest from a.
std::vector<double> double_sweep_coordinate(const PointedMetricSpace& x);

nlohmann::json to_json(const BoundInterval& b);

}  // namespace lll
