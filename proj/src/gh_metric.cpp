#include "lll/gh_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "segment_core.hpp"

namespace lll {

PointedMetricSpace::PointedMetricSpace(std::size_t n, std::vector<double> dist, std::size_t basepoint)
    : n_(n), base_(basepoint), dist_(std::move(dist)) {
  check_shape();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t l = 0; l < n_; ++l)
        if ((*this)(i, l) > (*this)(i, j) + (*this)(j, l) + kTolerance)
          throw std::invalid_argument("triangle inequality violated");
}

PointedMetricSpace PointedMetricSpace::trusted(std::size_t n, std::vector<double> dist,
                                               std::size_t basepoint) {
  PointedMetricSpace s;
  s.n_ = n;
  s.base_ = basepoint;
  s.dist_ = std::move(dist);
  s.check_shape();
  return s;
}

void PointedMetricSpace::check_shape() const {
  if (n_ == 0) throw std::invalid_argument("metric space must be non-empty");
  if (dist_.size() != n_ * n_) throw std::invalid_argument("distance table has wrong size");
  if (base_ >= n_) throw std::invalid_argument("basepoint out of range");
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs((*this)(i, i)) > kTolerance) throw std::invalid_argument("non-zero diagonal");
    for (std::size_t j = 0; j < n_; ++j) {
      double d = (*this)(i, j);
      if (!std::isfinite(d) || d < -kTolerance) throw std::invalid_argument("negative or non-finite distance");
      if (std::abs(d - (*this)(j, i)) > kTolerance) throw std::invalid_argument("asymmetric distance table");
    }
  }
}

PointedMetricSpace PointedMetricSpace::on_line(std::span<const double> points, std::size_t basepoint) {
  const std::size_t n = points.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(points[i] - points[j]);
  return trusted(n, std::move(d), basepoint);
}

PointedMetricSpace PointedMetricSpace::from_graph(const Graph& g, Vertex basepoint, double scale) {
  const std::size_t n = g.vertex_count();
  std::vector<double> d(n * n);
  for (Vertex u = 0; u < n; ++u) {
    auto row = bfs_distances(g, u);
    for (Vertex v = 0; v < n; ++v) d[std::size_t(u) * n + v] = scale * row[v];
  }
  return trusted(n, std::move(d), basepoint);
}

PointedMetricSpace PointedMetricSpace::graph_ball(const Graph& g, Vertex center, Distance radius,
                                                  double scale) {
  auto members = ball_vertices(g, center, radius);
  const std::size_t n = members.size();
  std::vector<double> d(n * n);
  const Distance reach = radius > kUnreachable / 2 ? kUnreachable : 2 * radius;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = bfs_distances(g, members[i].first, reach);
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = scale * row[members[j].first];
  }
  return trusted(n, std::move(d), 0);
}

double PointedMetricSpace::diameter() const { return *std::max_element(dist_.begin(), dist_.end()); }

double PointedMetricSpace::radius() const {
  double r = 0.0;
  for (std::size_t i = 0; i < n_; ++i) r = std::max(r, (*this)(base_, i));
  return r;
}

void Correspondence::validate(const PointedMetricSpace& x, const PointedMetricSpace& y) const {
  std::vector<bool> seen_x(x.size(), false), seen_y(y.size(), false);
  bool base = false;
  for (auto [a, b] : pairs) {
    if (a >= x.size() || b >= y.size()) throw std::invalid_argument("correspondence index out of range");
    seen_x[a] = seen_y[b] = true;
    base = base || (a == x.basepoint() && b == y.basepoint());
  }
  if (std::find(seen_x.begin(), seen_x.end(), false) != seen_x.end())
    throw std::invalid_argument("correspondence misses a point of X");
  if (std::find(seen_y.begin(), seen_y.end(), false) != seen_y.end())
    throw std::invalid_argument("correspondence misses a point of Y");
  if (!base) throw std::invalid_argument("correspondence lacks the basepoint pair");
}

double distortion(const Correspondence& r, const PointedMetricSpace& x, const PointedMetricSpace& y) {
  r.validate(x, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    auto [a, b] = r.pairs[i];
    for (std::size_t j = i + 1; j < r.pairs.size(); ++j) {
      auto [c, e] = r.pairs[j];
      worst = std::max(worst, std::abs(x(a, c) - y(b, e)));
    }
  }
  return worst;
}

namespace {

class ExactGhSearch {
 public:
  ExactGhSearch(const PointedMetricSpace& x, const PointedMetricSpace& y) : x_(x), y_(y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != x.basepoint()) free_.push_back({true, i});
    for (std::size_t j = 0; j < y.size(); ++j)
      if (j != y.basepoint()) free_.push_back({false, j});
    pairs_.emplace_back(x.basepoint(), y.basepoint());
  }

  double solve() {
    descend(0, 0.0);
    return best_;
  }

 private:
  struct Slot {
    bool from_x;
    std::size_t index;
  };

  double cost_with(std::size_t a, std::size_t b, double current) const {
    for (auto [c, e] : pairs_) {
      current = std::max(current, std::abs(x_(a, c) - y_(b, e)));
      if (current >= best_) break;
    }
    return current;
  }

  void descend(std::size_t slot, double current) {
    if (slot == free_.size()) {
      best_ = std::min(best_, current);
      return;
    }
    const Slot s = free_[slot];
    const std::size_t choices = s.from_x ? y_.size() : x_.size();
    for (std::size_t c = 0; c < choices; ++c) {
      std::size_t a = s.from_x ? s.index : c;
      std::size_t b = s.from_x ? c : s.index;
      double next = cost_with(a, b, current);
      if (next >= best_) continue;
      pairs_.emplace_back(a, b);
      descend(slot + 1, next);
      pairs_.pop_back();
    }
  }

  const PointedMetricSpace& x_;
  const PointedMetricSpace& y_;
  std::vector<Slot> free_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

double gh_exact_small(const PointedMetricSpace& x, const PointedMetricSpace& y) {
  if (x.size() > kExactGhLimit || y.size() > kExactGhLimit)
    throw std::length_error("gh_exact_small supports at most 8 points per side");
  return ExactGhSearch(x, y).solve() / 2.0;
}

double line_deviation(const PointedMetricSpace& x, std::size_t sample_budget) {
  return detail::line_deviation(x.size(), x, sample_budget);
}

Segment::Segment(double k) : half_length(k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("segment half-length must be positive");
}

PointedMetricSpace Segment::net(std::size_t points) const {
  if (points == 0 || points % 2 == 0) throw std::invalid_argument("segment net needs an odd point count");
  std::vector<double> xs(points);
  const std::size_t half = points / 2;
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = half == 0 ? 0.0 : half_length * (double(i) - double(half)) / double(half);
  return PointedMetricSpace::on_line(xs, half);
}

std::vector<double> double_sweep_coordinate(const PointedMetricSpace& x) {
  const std::size_t n = x.size(), base = x.basepoint();
  auto farthest = [&](std::size_t from) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (x(from, i) > x(from, best)) best = i;
    return best;
  };
  std::size_t a = farthest(base);
  std::size_t b = farthest(a);
  std::vector<double> coord(n);
  const double shift = 0.5 * (x(b, base) - x(a, base));
  for (std::size_t i = 0; i < n; ++i) coord[i] = 0.5 * (x(b, i) - x(a, i)) - shift;
  return coord;
}

BoundInterval gh_to_segment_bounds(const PointedMetricSpace& x, double k,
                                   std::optional<std::span<const double>> coordinate,
                                   std::size_t triple_budget) {
  k = Segment(k).half_length;
  const double rad = x.radius();
  const double diam = x.diameter();

  BoundInterval out;
  auto raise = [&](double value, const char* method) {
    if (value > out.lower) {
      out.lower = value;
      out.lower_method = method;
    }
  };
  out.lower_method = "trivial";
  raise((k - rad) / 2.0, "radius_short");
  raise((2.0 * k - diam) / 2.0, "diameter_short");
  raise((diam - 2.0 * k) / 2.0, "diameter_long");
  raise((rad - k) / 2.0, "radius_long");
  raise(line_deviation(x, triple_budget) / 6.0, "line_deviation");
  // The sets R(x) have diameter <= dis(R) and cover [-k, k], so
  // 2k <= |X| dis(R).
  raise(k / double(x.size()), "covering");

  std::vector<double> coord;
  if (coordinate) {
    if (coordinate->size() != x.size()) throw std::invalid_argument("coordinate size mismatch");
    coord.assign(coordinate->begin(), coordinate->end());
    const double shift = coord[x.basepoint()];
    for (auto& c : coord) c -= shift;
  } else {
    coord = double_sweep_coordinate(x);
  }
  for (auto& c : coord) c = std::clamp(c, -k, k);

  out.upper = std::max(diam, 2.0 * k) / 2.0;
  out.upper_method = "full";
  double corr = detail::continuum_distortion(x.size(), x, coord, k) / 2.0;
  if (corr < out.upper) {
    out.upper = corr;
    out.upper_method = "correspondence";
  }
  return out;
}

nlohmann::json to_json(const BoundInterval& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"lower_method", b.lower_method},
          {"upper_method", b.upper_method}};
}

}  // namespace lll
