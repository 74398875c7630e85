#include "lll/local_gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lll/geodesic.hpp"
#include "segment_core.hpp"

namespace lll {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Truncated multi-source BFS with reusable storage. Each reached vertex
// carries the smallest source index among its nearest sources.
class Explorer {
 public:
  explicit Explorer(std::size_t n) : dist_(n, kUnreachable), label_(n, kNone) {}

  void run(const Graph& g, std::span<const Vertex> sources, Distance limit) {
    clear();
    for (std::uint32_t i = 0; i < sources.size(); ++i) {
      Vertex s = sources[i];
      if (dist_[s] != kUnreachable) continue;
      dist_[s] = 0;
      label_[s] = i;
      order_.push_back(s);
    }
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const Vertex u = order_[head];
      const Distance du = dist_[u];
      if (du >= limit) continue;
      for (Vertex w : g.neighbors(u)) {
        if (dist_[w] == kUnreachable) {
          dist_[w] = du + 1;
          label_[w] = label_[u];
          order_.push_back(w);
        } else if (dist_[w] == du + 1 && label_[u] < label_[w]) {
          label_[w] = label_[u];
        }
      }
    }
  }

  void run(const Graph& g, Vertex source, Distance limit) { run(g, std::span<const Vertex>(&source, 1), limit); }

  Distance dist(Vertex v) const { return dist_[v]; }
  std::uint32_t label(Vertex v) const { return label_[v]; }
  const std::vector<Vertex>& order() const { return order_; }

 private:
  void clear() {
    for (Vertex v : order_) {
      dist_[v] = kUnreachable;
      label_[v] = kNone;
    }
    order_.clear();
  }

  std::vector<Distance> dist_;
  std::vector<std::uint32_t> label_;
  std::vector<Vertex> order_;
};

struct Scratch {
  explicit Scratch(std::size_t n) : ball(n), from_a(n), from_b(n), work(n) {}
  Explorer ball, from_a, from_b, work;
};

// A 1-d coordinate on the ball, in graph units relative to the center.
// With offsets, |d(x,y) - |phi(x) - phi(y)|| <= offset(x) + offset(y).
struct Frame {
  std::string name;
  std::vector<double> phi;
  std::vector<Distance> offset;
  std::vector<std::uint32_t> order;  // indices sorted by phi
};

// Everything about a ball that does not depend on k.
struct BallState {
  std::size_t m = 0;
  Distance radius = 0;
  std::vector<Frame> frames;
  bool exact = false;               // distances available and m small
  std::vector<Distance> table;      // m*m when exact without a matrix
  double diam_lo = 0.0, diam_hi = 0.0;
  double deviation = 0.0;
};

double three_point_deviation(double ab, double bc, double ac) {
  return std::min({std::abs(ac - ab - bc), std::abs(ab - ac - bc), std::abs(bc - ab - ac)});
}

void sort_frame(Frame& f) {
  f.order.resize(f.phi.size());
  for (std::uint32_t i = 0; i < f.order.size(); ++i) f.order[i] = i;
  std::stable_sort(f.order.begin(), f.order.end(), [&](auto a, auto b) { return f.phi[a] < f.phi[b]; });
}

// Bound from the frame correspondence {(x, c(x))} U {(rep(t), t)}: every
// distortion term is at most p(x) + p(y) + 2W with
// p = offset/s + |phi/s - c| and W the largest Voronoi half-gap.
double frame_bound(const Frame& f, double s, double k) {
  const std::size_t m = f.phi.size();
  double reach = 0.0, prev = 0.0;
  double top1 = 0.0, top2 = 0.0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    const std::uint32_t i = f.order[pos];
    const double raw = f.phi[i] / s;
    const double c = std::clamp(raw, -k, k);
    if (pos == 0) reach = c + k;
    else reach = std::max(reach, 0.5 * (c - prev));
    prev = c;
    const double p = double(f.offset[i]) / s + std::abs(raw - c);
    if (p > top1) {
      top2 = top1;
      top1 = p;
    } else if (p > top2) {
      top2 = p;
    }
  }
  reach = std::max(reach, k - prev);
  const double pair = m >= 2 ? top1 + top2 : 0.0;
  return 0.5 * (pair + 2.0 * reach);
}

}  // namespace

double tail_bound(std::size_t k_max) { return double(k_max + 2) / std::ldexp(1.0, int(k_max)); }

std::vector<double> geometric_scales(double from, double to, double ratio) {
  if (!(from > 0.0) || !(ratio > 1.0) || !(to >= from)) throw std::invalid_argument("invalid scale grid");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    double s = from * std::pow(ratio, double(i));
    // Even powers of sqrt(2) should land on integers, not a rounding step off.
    if (std::abs(s - std::round(s)) <= 1e-9 * s) s = std::round(s);
    if (s > to * (1.0 + 1e-12)) break;
    out.push_back(s);
  }
  return out;
}

nlohmann::json to_json(const ScaleBound& b) {
  return {{"scale", b.scale}, {"lower", b.lower}, {"upper", b.upper}, {"k_max", b.k_max}, {"tail", b.tail}};
}

struct LocalGhEvaluator::Impl {
  const Graph& g;
  LocalGhOptions opt;
  std::optional<DistanceMatrix> matrix;
  std::vector<std::uint32_t> global_index;
  std::vector<Distance> global_offset;
  std::vector<double> external;

  Impl(const Graph& graph, const LocalGhOptions& options) : g(graph), opt(options) {
    matrix = DistanceMatrix::build(g, opt.matrix_limit);
    if (opt.source != CoordinateSource::local) {
      // Exact diameters are affordable up to a few tens of thousands of
      // vertices; beyond that any shortest path serves as the frame.
      OrientedGeodesic geo;
      if (g.vertex_count() <= 20000) {
        geo = max_geodesic(g);
      } else {
        auto d = diameter(g, DiameterMode::double_sweep);
        geo = shortest_path(g, d.u, d.v);
      }
      auto dec = project_cells(g, geo, false);
      global_index = std::move(dec.projection);
      global_offset = std::move(dec.offset);
    }
  }

  void build_state(Scratch& sc, const std::vector<Vertex>& ids, const std::vector<Distance>& dv, std::size_t m,
                   Distance radius, BallState& st) const;
  ScaleBound evaluate(Scratch& sc, Vertex v, double s) const;
};

void LocalGhEvaluator::Impl::build_state(Scratch& sc, const std::vector<Vertex>& ids,
                                         const std::vector<Distance>& dv, std::size_t m, Distance radius,
                                         BallState& st) const {
  st = BallState{};
  st.m = m;
  st.radius = radius;
  const Distance reach = radius > kUnreachable / 4 ? kUnreachable : 2 * radius;

  // Double sweep inside the ball: a farthest from the center, b farthest from a.
  std::size_t a = 0;
  while (dv[a] != dv[m - 1]) ++a;
  sc.from_a.run(g, ids[a], reach);
  std::size_t b = a;
  for (std::size_t i = 0; i < m; ++i) {
    Distance di = sc.from_a.dist(ids[i]), db = sc.from_a.dist(ids[b]);
    if (di > db || (di == db && ids[i] < ids[b])) b = i;
  }
  sc.from_b.run(g, ids[b], reach);
  auto da = [&](std::size_t i) { return double(sc.from_a.dist(ids[i])); };
  auto db = [&](std::size_t i) { return double(sc.from_b.dist(ids[i])); };

  st.diam_lo = std::max(double(dv[m - 1]), da(b));
  st.diam_hi = 2.0 * double(dv[m - 1]);

  if (opt.source != CoordinateSource::geodesic && m > 1) {
    std::vector<Vertex> path;
    Vertex cur = ids[b];
    path.push_back(cur);
    while (cur != ids[a]) {
      for (Vertex w : g.neighbors(cur)) {
        if (sc.from_a.dist(w) + 1 == sc.from_a.dist(cur)) {
          cur = w;
          break;
        }
      }
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    Distance limit = 0;
    for (std::size_t i = 0; i < m; ++i) limit = std::max(limit, sc.from_a.dist(ids[i]));
    sc.work.run(g, path, limit);
    Frame f{"local", std::vector<double>(m), std::vector<Distance>(m), {}};
    const double origin = double(sc.work.label(ids[0]));
    for (std::size_t i = 0; i < m; ++i) {
      f.phi[i] = double(sc.work.label(ids[i])) - origin;
      f.offset[i] = sc.work.dist(ids[i]);
    }
    st.frames.push_back(std::move(f));

    // Geodesic through the center: a -> v, continued past v to the farthest
    // ball point c with d(a, c) = d(a, v) + d(v, c). When the ball wraps
    // around a cycle the sweep path above can miss the center's far side.
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (sc.from_a.dist(ids[i]) == dv[a] + dv[i] && dv[i] > dv[c]) c = i;
    std::vector<Vertex> through;
    for (Vertex cur = ids[0];;) {
      through.push_back(cur);
      if (cur == ids[a]) break;
      for (Vertex w : g.neighbors(cur))
        if (sc.from_a.dist(w) + 1 == sc.from_a.dist(cur)) {
          cur = w;
          break;
        }
    }
    std::reverse(through.begin(), through.end());
    const double origin_index = double(through.size() - 1);
    std::vector<Vertex> beyond;
    for (Vertex cur = ids[c]; cur != ids[0];) {
      beyond.push_back(cur);
      for (Vertex w : g.neighbors(cur))
        if (sc.ball.dist(w) + 1 == sc.ball.dist(cur)) {
          cur = w;
          break;
        }
    }
    through.insert(through.end(), beyond.rbegin(), beyond.rend());
    sc.work.run(g, through, limit);
    Frame t{"through", std::vector<double>(m), std::vector<Distance>(m), {}};
    for (std::size_t i = 0; i < m; ++i) {
      t.phi[i] = double(sc.work.label(ids[i])) - origin_index;
      t.offset[i] = sc.work.dist(ids[i]);
    }
    st.frames.push_back(std::move(t));
  }
  if (!global_index.empty()) {
    Frame f{"geodesic", std::vector<double>(m), std::vector<Distance>(m), {}};
    const double origin = double(global_index[ids[0]]);
    for (std::size_t i = 0; i < m; ++i) {
      f.phi[i] = double(global_index[ids[i]]) - origin;
      f.offset[i] = global_offset[ids[i]];
    }
    st.frames.push_back(std::move(f));
  }
  if (!external.empty()) {
    Frame f{"external", std::vector<double>(m), {}, {}};
    for (std::size_t i = 0; i < m; ++i) f.phi[i] = external[ids[i]] - external[ids[0]];
    st.frames.push_back(std::move(f));
  }

  for (auto& f : st.frames) {
    sort_frame(f);
    if (f.offset.empty() || m < 2) continue;
    Distance o1 = 0, o2 = 0;
    for (Distance o : f.offset) {
      if (o > o1) {
        o2 = o1;
        o1 = o;
      } else if (o > o2) {
        o2 = o;
      }
    }
    const double span = f.phi[f.order.back()] - f.phi[f.order.front()];
    st.diam_hi = std::min(st.diam_hi, span + double(o1) + double(o2));
  }

  // Deterministic triples through the sweep endpoints and the center.
  const double ab = da(b), va = double(dv[a]), vb = double(dv[b]);
  for (std::size_t i = 0; i < m; ++i) {
    st.deviation = std::max({st.deviation, three_point_deviation(ab, db(i), da(i)),
                             three_point_deviation(va, da(i), double(dv[i])),
                             three_point_deviation(vb, db(i), double(dv[i]))});
  }

  const bool small = m <= opt.exact_limit;
  if (!matrix && small) {
    st.table.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      sc.work.run(g, ids[i], reach);
      for (std::size_t j = 0; j < m; ++j) st.table[i * m + j] = sc.work.dist(ids[j]);
    }
  }
  auto dist = [&](std::size_t i, std::size_t j) -> Distance {
    return matrix ? (*matrix)(ids[i], ids[j]) : st.table[i * m + j];
  };
  if (matrix || small)
    st.deviation = std::max(st.deviation, detail::line_deviation(m, dist, opt.triple_budget));

  if (small) {
    st.exact = true;
    Distance diam = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) diam = std::max(diam, dist(i, j));
    st.diam_lo = st.diam_hi = double(diam);
    Frame f{"busemann", std::vector<double>(m), {}, {}};
    const double shift = 0.5 * (db(0) - da(0));
    for (std::size_t i = 0; i < m; ++i) f.phi[i] = 0.5 * (db(i) - da(i)) - shift;
    sort_frame(f);
    st.frames.push_back(std::move(f));
  }
}

ScaleBound LocalGhEvaluator::Impl::evaluate(Scratch& sc, Vertex v, double s) const {
  if (!g.contains(v)) throw std::out_of_range("vertex out of range");
  if (!(s >= 1.0) || !std::isfinite(s)) throw std::invalid_argument("scale must be at least 1");
  const std::size_t K = opt.k_max;
  auto radius_of = [&](std::size_t k) {
    double r = std::floor(double(k) * s + 1e-9);
    return r >= double(kUnreachable / 4) ? kUnreachable / 4 : Distance(r);
  };

  sc.ball.run(g, v, radius_of(K));
  std::vector<Vertex> ids(sc.ball.order());
  std::stable_sort(ids.begin(), ids.end(), [&](Vertex a, Vertex b) {
    Distance da = sc.ball.dist(a), db = sc.ball.dist(b);
    return da != db ? da < db : a < b;
  });
  std::vector<Distance> dv(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) dv[i] = sc.ball.dist(ids[i]);

  ScaleBound out;
  out.scale = s;
  out.k_max = K;
  out.tail = tail_bound(K);

  BallState st;
  std::vector<double> coord;
  for (std::size_t k = 1; k <= K; ++k) {
    const Distance R = radius_of(k);
    const std::size_t m = std::size_t(std::upper_bound(dv.begin(), dv.end(), R) - dv.begin());
    if (m != st.m) build_state(sc, ids, dv, m, R, st);
    const double kk = double(k);

    SummandBound sb;
    sb.k = k;
    sb.radius = R;
    sb.ball_size = m;
    sb.lower_method = "trivial";
    auto raise = [&](double value, const char* method) {
      if (value > sb.lower) {
        sb.lower = value;
        sb.lower_method = method;
      }
    };
    const double rad = double(dv[m - 1]) / s;
    raise((kk - rad) / 2.0, "radius_short");
    raise((rad - kk) / 2.0, "radius_long");
    raise((2.0 * kk - st.diam_hi / s) / 2.0, "diameter_short");
    raise((st.diam_lo / s - 2.0 * kk) / 2.0, "diameter_long");
    raise(st.deviation / s / 6.0, "line_deviation");
    raise(kk / double(m), "covering");

    sb.upper = std::max(st.diam_hi / s, 2.0 * kk) / 2.0;
    sb.upper_method = "full";
    for (const auto& f : st.frames) {
      double value;
      if (st.exact) {
        coord.resize(m);
        for (std::size_t i = 0; i < m; ++i) coord[i] = std::clamp(f.phi[i] / s, -kk, kk);
        auto scaled = [&](std::size_t i, std::size_t j) {
          return double(matrix ? (*matrix)(ids[i], ids[j]) : st.table[i * m + j]) / s;
        };
        value = detail::continuum_distortion(m, scaled, coord, kk) / 2.0;
      } else if (!f.offset.empty()) {
        value = frame_bound(f, s, kk);
      } else {
        continue;
      }
      if (value < sb.upper) {
        sb.upper = value;
        sb.upper_method = (st.exact ? "correspondence:" : "frame:") + f.name;
      }
    }

    const double w = std::ldexp(1.0, -int(k));
    out.lower += w * sb.lower;
    out.upper += w * sb.upper;
    out.summands.push_back(std::move(sb));
  }
  out.upper += out.tail;
  return out;
}

LocalGhEvaluator::LocalGhEvaluator(const Graph& g, LocalGhOptions options)
    : options_(options), impl_(std::make_unique<Impl>(g, options)) {
  if (options.k_max < 1) throw std::invalid_argument("k_max must be at least 1");
}

LocalGhEvaluator::~LocalGhEvaluator() = default;
LocalGhEvaluator::LocalGhEvaluator(LocalGhEvaluator&&) noexcept = default;

void LocalGhEvaluator::set_coordinate(std::vector<double> coordinate) {
  if (coordinate.size() != impl_->g.vertex_count()) throw std::invalid_argument("coordinate size mismatch");
  for (double c : coordinate)
    if (!std::isfinite(c)) throw std::invalid_argument("coordinate must be finite");
  impl_->external = std::move(coordinate);
}

ScaleBound LocalGhEvaluator::evaluate(Vertex v, double scale) const {
  Scratch sc(impl_->g.vertex_count());
  return impl_->evaluate(sc, v, scale);
}

ScaleScan LocalGhEvaluator::scan(Vertex v, std::span<const double> scales) const {
  if (scales.empty()) throw std::invalid_argument("scale list is empty");
  Scratch sc(impl_->g.vertex_count());
  ScaleScan out;
  out.min_upper = std::numeric_limits<double>::infinity();
  out.max_lower = -std::numeric_limits<double>::infinity();
  for (double s : scales) {
    auto b = impl_->evaluate(sc, v, s);
    if (b.upper < out.min_upper) {
      out.min_upper = b.upper;
      out.best_scale = s;
    }
    out.max_lower = std::max(out.max_lower, b.lower);
    out.bounds.push_back(std::move(b));
  }
  return out;
}

ScaleBound local_gh_to_line(const Graph& g, Vertex v, double scale, std::size_t k_max,
                            std::optional<std::span<const double>> coordinate) {
  LocalGhOptions options;
  options.k_max = k_max;
  LocalGhEvaluator eval(g, options);
  if (coordinate) eval.set_coordinate({coordinate->begin(), coordinate->end()});
  return eval.evaluate(v, scale);
}

ScaleScan scale_scan(const Graph& g, Vertex v, std::span<const double> scales, LocalGhOptions options,
                     std::optional<std::span<const double>> coordinate) {
  LocalGhEvaluator eval(g, options);
  if (coordinate) eval.set_coordinate({coordinate->begin(), coordinate->end()});
  return eval.scan(v, scales);
}

}  // namespace lll
