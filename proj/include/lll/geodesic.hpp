#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "lll/gh_metric.hpp"
#include "lll/graph.hpp"

namespace lll {

/// Ordered shortest path X_0 ... X_L.
struct OrientedGeodesic {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Shortest path from `from` to `to`; each step back from `to` takes the
/// smallest-id neighbour one layer closer to `from`.
OrientedGeodesic shortest_path(const Graph& g, Vertex from, Vertex to);

/// Shortest path between the lexicographically smallest diameter-realizing
/// pair, oriented from the smaller endpoint id to the larger.
OrientedGeodesic max_geodesic(const Graph& g);

/// Nearest-point projection onto a geodesic and the induced cells
/// K_n = { v : projection(v) = n }.
struct CellDecomposition {
  OrientedGeodesic geodesic;
  std::vector<std::uint32_t> projection;   // per vertex, index into the geodesic
  std::vector<Distance> offset;            // per vertex, d(v, X_projection(v))
  std::vector<std::vector<Vertex>> cells;  // per geodesic index, sorted ids
  std::vector<Distance> cell_diameters;    // ambient-metric diameter of each cell

  std::size_t size() const { return cells.size(); }
  Distance cell_radius(std::size_t index) const;

  nlohmann::json to_json() const;
};

/// Multi-source BFS from the geodesic; ties between equally near geodesic
/// points go to the smallest index. Cell diameters cost one BFS per vertex
/// in a non-trivial cell; without them `cell_diameters` is left empty.
CellDecomposition project_cells(const Graph& g, const OrientedGeodesic& geodesic,
                                bool with_diameters = true);

struct WindowStat {
  std::size_t half_width = 0;
  std::size_t first = 0;  // first index inside the (clipped) window
  std::size_t last = 0;   // last index inside the (clipped) window
  double mean_size = 0.0; // average |K_m| over the window
  double max_ratio = 0.0; // max |K_m| divided by the window width
  bool clipped = false;
};

struct CellStats {
  std::size_t center = 0;
  std::vector<std::size_t> sizes;
  std::vector<Distance> diameters;
  std::vector<WindowStat> windows;
  /// Cells with |K_n| < diam(K_n). Logged, not asserted.
  std::size_t size_below_diameter = 0;

  nlohmann::json to_json() const;
};

/// Windowed size statistics around `center` for every half-width up to
/// the farther geodesic end. Window means and ratios divide by the number
/// of indices actually inside the window.
CellStats cell_statistics(const CellDecomposition& dec, std::size_t center);

/// Correspondence between the rescaled ball (B(v, floor(A r)), d/r, v) and a
/// grid on [-A, A] with spacing at most delta = A / max(64, |ball|).
struct SegmentCorrespondence {
  std::vector<Vertex> ball;  // graph ids of the points of `space`
  PointedMetricSpace space;
  PointedMetricSpace grid;
  Correspondence relation;
  double delta = 0.0;
  double finite_distortion = 0.0;  // exact distortion on the grid
  double distortion = 0.0;         // finite_distortion + delta, valid for the continuum
  double predicted_bound = 0.0;    // (2 max cell diameter + 2) / r + delta

  nlohmann::json to_json() const;
};

SegmentCorrespondence segment_correspondence(const Graph& g, const CellDecomposition& dec,
                                             Vertex center, double half_length, double scale);

/// Component sizes (descending) after deleting the cells with
/// |index - center| <= half_width. Throws std::out_of_range if that window
/// leaves the geodesic.
std::vector<std::size_t> separation_components(const Graph& g, const CellDecomposition& dec,
                                               std::size_t half_width, std::size_t center);

/// |B_r(v)| / r for r = 1..r_max.
std::vector<double> growth_profile(const Graph& g, Vertex v, Distance r_max);

}  // namespace lll
