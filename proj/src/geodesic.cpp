#include "lll/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lll {

OrientedGeodesic shortest_path(const Graph& g, Vertex from, Vertex to) {
  if (!g.contains(from) || !g.contains(to)) throw std::out_of_range("path endpoint out of range");
  auto dist = bfs_distances(g, from);
  OrientedGeodesic path;
  path.vertices.reserve(dist[to] + 1);
  Vertex cur = to;
  path.vertices.push_back(cur);
  while (cur != from) {
    for (Vertex w : g.neighbors(cur)) {
      if (dist[w] + 1 == dist[cur]) {
        cur = w;
        break;
      }
    }
    path.vertices.push_back(cur);
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

OrientedGeodesic max_geodesic(const Graph& g) {
  auto d = diameter(g, DiameterMode::exact);
  return shortest_path(g, d.u, d.v);
}

Distance CellDecomposition::cell_radius(std::size_t index) const {
  Distance r = 0;
  for (Vertex v : cells.at(index)) r = std::max(r, offset[v]);
  return r;
}

CellDecomposition project_cells(const Graph& g, const OrientedGeodesic& geodesic, bool with_diameters) {
  const std::size_t n = g.vertex_count();
  if (geodesic.vertices.empty()) throw std::invalid_argument("empty geodesic");
  CellDecomposition dec;
  dec.geodesic = geodesic;
  dec.projection.assign(n, std::uint32_t(-1));
  dec.offset.assign(n, kUnreachable);

  std::vector<Vertex> frontier;
  for (std::uint32_t i = 0; i < geodesic.vertices.size(); ++i) {
    Vertex x = geodesic.vertices[i];
    if (!g.contains(x)) throw std::out_of_range("geodesic vertex out of range");
    if (dec.offset[x] == 0) throw std::invalid_argument("geodesic repeats a vertex");
    dec.offset[x] = 0;
    dec.projection[x] = i;
    frontier.push_back(x);
  }
  // Layered BFS: a vertex's nearest geodesic points are exactly the
  // nearest points of its neighbours one layer closer, so taking the
  // minimum label over that layer realizes the smallest-index tie-break.
  for (Distance layer = 0; !frontier.empty(); ++layer) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex w : g.neighbors(u)) {
        if (dec.offset[w] == kUnreachable) {
          dec.offset[w] = layer + 1;
          dec.projection[w] = dec.projection[u];
          next.push_back(w);
        } else if (dec.offset[w] == layer + 1) {
          dec.projection[w] = std::min(dec.projection[w], dec.projection[u]);
        }
      }
    }
    frontier = std::move(next);
  }

  dec.cells.assign(geodesic.vertices.size(), {});
  for (Vertex v = 0; v < n; ++v) dec.cells[dec.projection[v]].push_back(v);

  if (!with_diameters) return dec;
  dec.cell_diameters.assign(dec.cells.size(), 0);
  for (std::size_t c = 0; c < dec.cells.size(); ++c) {
    const auto& cell = dec.cells[c];
    if (cell.size() < 2) continue;
    Distance best = 0;
    for (Vertex u : cell) {
      auto d = bfs_distances(g, u);
      for (Vertex w : cell) best = std::max(best, d[w]);
    }
    dec.cell_diameters[c] = best;
  }
  return dec;
}

nlohmann::json CellDecomposition::to_json() const {
  std::vector<std::size_t> sizes;
  for (const auto& c : cells) sizes.push_back(c.size());
  return {{"geodesic", geodesic.vertices},
          {"projection", projection},
          {"cell_sizes", sizes},
          {"cell_diameters", cell_diameters}};
}

CellStats cell_statistics(const CellDecomposition& dec, std::size_t center) {
  const std::size_t count = dec.cells.size();
  if (center >= count) throw std::out_of_range("center index outside the geodesic");
  if (dec.cell_diameters.size() != count) throw std::invalid_argument("decomposition lacks cell diameters");
  CellStats st;
  st.center = center;
  for (std::size_t i = 0; i < count; ++i) {
    st.sizes.push_back(dec.cells[i].size());
    st.diameters.push_back(dec.cell_diameters[i]);
    if (dec.cells[i].size() < dec.cell_diameters[i]) ++st.size_below_diameter;
  }
  const std::size_t reach = std::max(center, count - 1 - center);
  for (std::size_t h = 0; h <= reach; ++h) {
    WindowStat w;
    w.half_width = h;
    w.first = center >= h ? center - h : 0;
    w.last = std::min(count - 1, center + h);
    w.clipped = center < h || center + h > count - 1;
    std::size_t total = 0, largest = 0;
    for (std::size_t m = w.first; m <= w.last; ++m) {
      total += st.sizes[m];
      largest = std::max(largest, st.sizes[m]);
    }
    const double width = double(w.last - w.first + 1);
    w.mean_size = double(total) / width;
    w.max_ratio = double(largest) / width;
    st.windows.push_back(w);
  }
  return st;
}

nlohmann::json CellStats::to_json() const {
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : this->windows)
    windows.push_back({{"half_width", w.half_width},
                       {"first", w.first},
                       {"last", w.last},
                       {"mean_size", w.mean_size},
                       {"max_ratio", w.max_ratio},
                       {"clipped", w.clipped}});
  Distance max_diam = diameters.empty() ? 0 : *std::max_element(diameters.begin(), diameters.end());
  return {{"center", center},
          {"cell_sizes", sizes},
          {"cell_diameters", diameters},
          {"max_cell_diameter", max_diam},
          {"size_below_diameter", size_below_diameter},
          {"windows", windows}};
}

SegmentCorrespondence segment_correspondence(const Graph& g, const CellDecomposition& dec,
                                             Vertex center, double half_length, double scale) {
  if (!g.contains(center)) throw std::out_of_range("center vertex out of range");
  if (dec.projection.size() != g.vertex_count()) throw std::invalid_argument("decomposition does not match graph");
  if (dec.cell_diameters.size() != dec.cells.size()) throw std::invalid_argument("decomposition lacks cell diameters");
  if (!(scale > 0.0) || !(half_length > 0.0)) throw std::invalid_argument("A and r must be positive");

  const auto radius = Distance(std::floor(half_length * scale));
  auto members = ball_vertices(g, center, radius);
  const std::size_t n = members.size();

  std::vector<Vertex> ids;
  std::vector<std::uint32_t> local(g.vertex_count(), std::uint32_t(-1));
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(members[i].first);
    local[members[i].first] = std::uint32_t(i);
  }

  const double target_delta = half_length / double(std::max<std::size_t>(64, n));
  const auto steps = std::size_t(std::ceil(half_length / target_delta));
  const double step = half_length / double(steps);

  SegmentCorrespondence out{ids,
                            PointedMetricSpace::graph_ball(g, center, radius, 1.0 / scale),
                            Segment(half_length).net(2 * steps + 1),
                            {},
                            step};

  const double origin = double(dec.projection[center]);
  std::vector<double> coord(n);
  for (std::size_t i = 0; i < n; ++i)
    coord[i] = std::clamp((double(dec.projection[ids[i]]) - origin) / scale, -half_length, half_length);

  auto grid_point = [&](std::size_t j) { return -half_length + double(j) * step; };
  for (std::size_t i = 0; i < n; ++i) {
    auto j = std::size_t(std::llround((coord[i] + half_length) / step));
    out.relation.pairs.emplace_back(i, std::min(j, 2 * steps));
  }

  const auto last = std::int64_t(dec.geodesic.length());
  for (std::size_t j = 0; j <= 2 * steps; ++j) {
    const double t = grid_point(j);
    auto index = std::clamp(std::int64_t(origin) + std::int64_t(std::floor(scale * t)), std::int64_t(0), last);
    std::uint32_t i = local[dec.geodesic.vertices[std::size_t(index)]];
    if (i == std::uint32_t(-1)) {
      // X_index fell outside the ball; use the ball point with nearest coordinate.
      i = 0;
      for (std::uint32_t c = 1; c < n; ++c)
        if (std::abs(coord[c] - t) < std::abs(coord[i] - t)) i = c;
    }
    out.relation.pairs.emplace_back(i, j);
  }

  out.finite_distortion = distortion(out.relation, out.space, out.grid);
  out.distortion = out.finite_distortion + out.delta;

  Distance widest = 0;
  for (Vertex v : ids) widest = std::max(widest, dec.cell_diameters[dec.projection[v]]);
  out.predicted_bound = (2.0 * widest + 2.0) / scale + out.delta;
  return out;
}

nlohmann::json SegmentCorrespondence::to_json() const {
  return {{"ball_size", ball.size()},
          {"grid_points", grid.size()},
          {"delta", delta},
          {"finite_distortion", finite_distortion},
          {"distortion", distortion},
          {"predicted_bound", predicted_bound},
          {"within_bound", distortion <= predicted_bound + 1e-12}};
}

std::vector<std::size_t> separation_components(const Graph& g, const CellDecomposition& dec,
                                               std::size_t half_width, std::size_t center) {
  const std::size_t count = dec.cells.size();
  if (center >= count || center < half_width || center + half_width >= count)
    throw std::out_of_range("separation window leaves the geodesic");
  std::vector<bool> removed(g.vertex_count(), false);
  for (std::size_t m = center - half_width; m <= center + half_width; ++m)
    for (Vertex v : dec.cells[m]) removed[v] = true;

  std::vector<std::size_t> sizes;
  std::vector<bool> seen(removed);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::size_t size = 0;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::vector<double> growth_profile(const Graph& g, Vertex v, Distance r_max) {
  if (r_max < 1) throw std::invalid_argument("r_max must be at least 1");
  auto dist = bfs_distances(g, v, r_max);
  std::vector<std::size_t> layer(std::size_t(r_max) + 1, 0);
  for (Distance d : dist)
    if (d != kUnreachable) ++layer[d];
  std::vector<double> profile;
  std::size_t total = layer[0];
  for (Distance r = 1; r <= r_max; ++r) {
    total += layer[r];
    profile.push_back(double(total) / double(r));
  }
  return profile;
}

}  // namespace lll
