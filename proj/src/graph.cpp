#include "lll/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lll {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (n > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("too many vertices");

  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  Graph g;
  g.offsets_.reserve(n + 1);
  g.offsets_.push_back(0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw std::invalid_argument("repeated edge at vertex " + std::to_string(v));
    g.targets_.insert(g.targets_.end(), list.begin(), list.end());
    g.offsets_.push_back(g.targets_.size());
  }

  auto dist = bfs_distances(g, 0);
  if (std::find(dist.begin(), dist.end(), kUnreachable) != dist.end())
    throw std::invalid_argument("graph is not connected");
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::comb: return "comb";
    case Family::grid: return "grid";
    case Family::grid_line: return "grid_line";
    case Family::torus: return "torus";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (auto f : {Family::path, Family::cycle, Family::comb, Family::grid, Family::grid_line,
                 Family::torus})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

void FamilySpec::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  switch (kind) {
    case Family::path: require(n >= 1, "path needs n >= 1"); break;
    // n < 3 would need a self-loop or a doubled edge.
    case Family::cycle: require(n >= 3, "cycle needs n >= 3"); break;
    case Family::comb:
      require(n >= 1, "comb needs n >= 1");
      require(r >= 1 && r <= n, "comb needs 1 <= r <= n");
      break;
    case Family::grid: require(width >= 1 && height >= 1, "grid needs width, height >= 1"); break;
    case Family::grid_line: require(n >= 1, "grid_line needs n >= 1"); break;
    case Family::torus: require(width >= 3 && height >= 3, "torus needs width, height >= 3"); break;
  }
}

std::string FamilySpec::describe() const {
  std::string s = to_string(kind);
  switch (kind) {
    case Family::path:
    case Family::cycle:
    case Family::grid_line: return s + "(" + std::to_string(n) + ")";
    case Family::comb: return s + "(" + std::to_string(n) + "," + std::to_string(r) + ")";
    case Family::grid:
    case Family::torus: return s + "(" + std::to_string(width) + "x" + std::to_string(height) + ")";
  }
  return s;
}

std::vector<Vertex> comb_tooth_bases(std::uint32_t n, std::uint32_t r) {
  const std::uint64_t teeth = (std::uint64_t(n) + r - 1) / r;
  std::vector<Vertex> bases;
  bases.reserve(teeth);
  for (std::uint64_t j = 0; j < teeth; ++j) bases.push_back(Vertex(j * n / teeth));
  return bases;
}

namespace {

std::vector<Edge> grid_edges(std::uint32_t w, std::uint32_t h, bool wrap) {
  std::vector<Edge> edges;
  auto id = [w](std::uint32_t x, std::uint32_t y) { return Vertex(y * w + x); };
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      if (x + 1 < w) edges.emplace_back(id(x, y), id(x + 1, y));
      else if (wrap) edges.emplace_back(id(0, y), id(x, y));
      if (y + 1 < h) edges.emplace_back(id(x, y), id(x, y + 1));
      else if (wrap) edges.emplace_back(id(x, 0), id(x, y));
    }
  }
  return edges;
}

}  // namespace

Graph generate(const FamilySpec& spec) {
  spec.validate();
  std::vector<Edge> edges;
  std::size_t n = 0;
  switch (spec.kind) {
    case Family::path:
      n = std::size_t(spec.n) + 1;
      for (Vertex i = 0; i < spec.n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::cycle:
      n = spec.n;
      for (Vertex i = 0; i < spec.n; ++i) edges.emplace_back(i, (i + 1) % spec.n);
      break;
    case Family::comb: {
      // Body 0..n, then each tooth as r consecutive ids hanging off its base.
      for (Vertex i = 0; i < spec.n; ++i) edges.emplace_back(i, i + 1);
      Vertex next = spec.n + 1;
      for (Vertex base : comb_tooth_bases(spec.n, spec.r)) {
        Vertex prev = base;
        for (std::uint32_t d = 0; d < spec.r; ++d) {
          edges.emplace_back(prev, next);
          prev = next++;
        }
      }
      n = next;
      break;
    }
    case Family::grid:
      n = std::size_t(spec.width) * spec.height;
      edges = grid_edges(spec.width, spec.height, false);
      break;
    case Family::torus:
      n = std::size_t(spec.width) * spec.height;
      edges = grid_edges(spec.width, spec.height, true);
      break;
    case Family::grid_line: {
      const std::size_t side = spec.n;
      const std::size_t cells = side * side;
      edges = grid_edges(spec.n, spec.n, false);
      // Path of n^2 edges starting at the corner (0,0), whose id is 0.
      Vertex prev = 0;
      for (std::size_t i = 0; i < cells; ++i) {
        Vertex v = Vertex(cells + i);
        edges.emplace_back(prev, v);
        prev = v;
      }
      n = 2 * cells;
      break;
    }
  }
  return Graph::from_edges(n, edges);
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex source, Distance max_depth) {
  if (!g.contains(source)) throw std::out_of_range("bfs source out of range");
  std::vector<Distance> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    if (dist[u] >= max_depth) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex source) {
  return bfs_distances(g, source, kUnreachable);
}

Distance eccentricity(const Graph& g, Vertex v) {
  auto d = bfs_distances(g, v);
  return *std::max_element(d.begin(), d.end());
}

DiameterResult diameter(const Graph& g, DiameterMode mode) {
  DiameterResult best;
  if (mode == DiameterMode::double_sweep) {
    auto far = [&](Vertex from) {
      auto d = bfs_distances(g, from);
      auto it = std::max_element(d.begin(), d.end());
      return std::pair{Vertex(it - d.begin()), *it};
    };
    auto [a, da] = far(0);
    auto [b, db] = far(a);
    best.value = db;
    best.u = std::min(a, b);
    best.v = std::max(a, b);
    best.exact = false;
    return best;
  }
  bool found = false;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    auto d = bfs_distances(g, u);
    for (Vertex v = u; v < g.vertex_count(); ++v) {
      // Scanning u ascending then v ascending keeps the first strict
      // maximum, which is the lexicographically smallest realizing pair.
      if (!found || d[v] > best.value) {
        best = {d[v], u, v, true};
        found = true;
      }
    }
  }
  return best;
}

std::vector<std::pair<Vertex, Distance>> ball_vertices(const Graph& g, Vertex v, Distance r) {
  auto dist = bfs_distances(g, v, r);
  std::vector<std::pair<Vertex, Distance>> out;
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    if (dist[u] != kUnreachable) out.emplace_back(u, dist[u]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

RootedGraph ball(const Graph& g, Vertex v, Distance r) {
  auto members = ball_vertices(g, v, r);
  std::vector<Vertex> local(g.vertex_count(), kUnreachable);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i].first] = Vertex(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Vertex w : g.neighbors(members[i].first)) {
      Vertex j = local[w];
      if (j != kUnreachable && i < j) edges.emplace_back(Vertex(i), j);
    }
  }
  return {Graph::from_edges(members.size(), edges), 0};
}

Rational uniform_integrability_margin(std::span<const Graph> family, std::size_t cutoff) {
  if (family.empty()) throw std::invalid_argument("empty graph family");
  Rational worst(0);
  for (const auto& g : family) {
    std::int64_t mass = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (g.degree(v) > cutoff) mass += std::int64_t(g.degree(v));
    worst = std::max(worst, Rational(mass, std::int64_t(g.vertex_count())));
  }
  return worst;
}

MassTransport mtp_check(const Graph& g, const TransportFunction& f) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Distance>> dist(n);
  for (Vertex u = 0; u < n; ++u) dist[u] = bfs_distances(g, u);

  // Both sides are accumulated in the order they are written: the outer
  // sum always runs over the first index.
  BigRational sent(0), received(0);
  for (Vertex u = 0; u < n; ++u) {
    BigRational row_out(0), row_in(0);
    for (Vertex v = 0; v < n; ++v) {
      Rational out = f(dist[u][v], g.degree(u), g.degree(v));
      Rational in = f(dist[v][u], g.degree(v), g.degree(u));
      if (out < 0 || in < 0) throw std::invalid_argument("transport function must be non-negative");
      row_out += to_big(out);
      row_in += to_big(in);
    }
    sent += row_out;
    received += row_in;
  }
  return {sent / BigRational(n), received / BigRational(n)};
}

std::optional<DistanceMatrix> DistanceMatrix::build(const Graph& g, std::size_t vertex_limit) {
  const std::size_t n = g.vertex_count();
  if (n > vertex_limit) return std::nullopt;
  DistanceMatrix m;
  m.n_ = n;
  m.data_.resize(n * n);
  for (Vertex u = 0; u < n; ++u) {
    auto d = bfs_distances(g, u);
    for (Vertex v = 0; v < n; ++v) {
      if (d[v] > std::numeric_limits<std::uint16_t>::max()) return std::nullopt;
      m.data_[std::size_t(u) * n + v] = std::uint16_t(d[v]);
    }
  }
  return m;
}

}  // namespace lll
