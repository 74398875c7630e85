#include "lll/local_topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lll {

namespace {

using Coloring = std::vector<std::uint32_t>;

// Replaces keys by their dense rank in sorted order; returns the class count.
template <class Key>
std::size_t assign_ranks(const std::vector<Key>& keys, Coloring& color) {
  const std::size_t n = keys.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && keys[order[i - 1]] < keys[order[i]]) ++rank;
    color[order[i]] = rank;
  }
  return n == 0 ? 0 : std::size_t(rank) + 1;
}

std::size_t class_count(const Coloring& color) {
  return color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + std::size_t(1);
}

// Colour refinement to the coarsest equitable partition finer than the
// input. Ranks are ordered by (old colour, neighbour colour multiset), so
// the outcome commutes with vertex relabeling.
void refine(const Graph& g, Coloring& color) {
  const std::size_t n = g.vertex_count();
  std::size_t classes = class_count(color);
  std::vector<std::vector<std::uint32_t>> sig(n);
  while (classes < n) {
    for (Vertex v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(color[v]);
      for (Vertex w : g.neighbors(v)) s.push_back(color[w]);
      std::sort(s.begin() + 1, s.end());
    }
    Coloring next(n);
    std::size_t refined = assign_ranks(sig, next);
    color = std::move(next);
    if (refined == classes) break;
    classes = refined;
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Individualization-refinement search for the lexicographically smallest
// edge certificate. Automorphisms discovered at equal leaves prune
// children that lie in one orbit of the prefix stabilizer.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : g_(g) {}

  void run(Coloring initial) {
    std::vector<Vertex> prefix;
    search(std::move(initial), prefix);
  }

  const std::vector<std::uint32_t>& certificate() const { return best_cert_; }
  const Coloring& labeling() const { return best_lab_; }

 private:
  void search(Coloring color, std::vector<Vertex>& prefix) {
    refine(g_, color);
    const std::size_t n = g_.vertex_count();
    if (class_count(color) == n) {
      leaf(color);
      return;
    }

    std::vector<std::size_t> cell_size(n, 0);
    for (auto c : color) ++cell_size[c];
    std::uint32_t target = 0;
    while (cell_size[target] < 2) ++target;

    std::vector<Vertex> cell;
    for (Vertex v = 0; v < n; ++v)
      if (color[v] == target) cell.push_back(v);

    std::vector<Vertex> explored;
    for (Vertex candidate : cell) {
      if (!explored.empty() && same_orbit(prefix, explored, candidate)) continue;
      Coloring next(n);
      for (Vertex v = 0; v < n; ++v)
        next[v] = 2 * color[v] + ((color[v] == target && v != candidate) ? 1u : 0u);
      Coloring ranked(n);
      assign_ranks(next, ranked);
      prefix.push_back(candidate);
      search(std::move(ranked), prefix);
      prefix.pop_back();
      explored.push_back(candidate);
    }
  }

  bool same_orbit(const std::vector<Vertex>& prefix, const std::vector<Vertex>& explored,
                  Vertex candidate) const {
    UnionFind orbits(g_.vertex_count());
    bool any = false;
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](Vertex p) { return gamma[p] == p; });
      if (!fixes) continue;
      any = true;
      for (Vertex v = 0; v < gamma.size(); ++v) orbits.unite(v, gamma[v]);
    }
    if (!any) return false;
    auto root = orbits.find(candidate);
    return std::any_of(explored.begin(), explored.end(),
                       [&](Vertex e) { return orbits.find(e) == root; });
  }

  void leaf(const Coloring& lab) {
    std::vector<std::uint32_t> cert;
    cert.reserve(2 * g_.edge_count());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g_.edge_count());
    for (auto [u, v] : g_.edges()) edges.emplace_back(std::min(lab[u], lab[v]), std::max(lab[u], lab[v]));
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges) {
      cert.push_back(a);
      cert.push_back(b);
    }

    if (best_lab_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_lab_ = lab;
      best_inverse_.assign(lab.size(), 0);
      for (Vertex v = 0; v < lab.size(); ++v) best_inverse_[lab[v]] = v;
    } else if (cert == best_cert_) {
      std::vector<Vertex> gamma(lab.size());
      for (Vertex v = 0; v < lab.size(); ++v) gamma[v] = best_inverse_[lab[v]];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  const Graph& g_;
  std::vector<std::uint32_t> best_cert_;
  Coloring best_lab_;
  std::vector<Vertex> best_inverse_;
  std::vector<std::vector<Vertex>> automorphisms_;
};

void put_varint(std::string& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(char((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(char(x));
}

CanonicalSearch run_search(const RootedGraph& rg) {
  if (!rg.graph.contains(rg.root)) throw std::out_of_range("root outside graph");
  auto dist = bfs_distances(rg.graph, rg.root);
  CanonicalSearch search(rg.graph);
  search.run(Coloring(dist.begin(), dist.end()));
  return search;
}

}  // namespace

std::string CanonicalCode::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

CanonicalCode CanonicalCode::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex code");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  CanonicalCode code;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    code.bytes.push_back(char(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  return code;
}

std::vector<Vertex> canonical_labeling(const RootedGraph& rg) {
  auto search = run_search(rg);
  const auto& lab = search.labeling();
  return {lab.begin(), lab.end()};
}

CanonicalCode canonical_code(const RootedGraph& rg) {
  auto search = run_search(rg);
  CanonicalCode code;
  put_varint(code.bytes, rg.graph.vertex_count());
  put_varint(code.bytes, rg.graph.edge_count());
  for (auto x : search.certificate()) put_varint(code.bytes, x);
  return code;
}

LocalityRadius locality_radius(const RootedGraph& a, const RootedGraph& b, Distance cap) {
  const Distance ecc_a = eccentricity(a.graph, a.root);
  const Distance ecc_b = eccentricity(b.graph, b.root);
  for (Distance r = 1; r <= cap; ++r) {
    auto ba = ball(a.graph, a.root, r);
    auto bb = ball(b.graph, b.root, r);
    bool same = ba.graph.vertex_count() == bb.graph.vertex_count() &&
                ba.graph.edge_count() == bb.graph.edge_count() &&
                canonical_code(ba) == canonical_code(bb);
    if (!same) return {r - 1, false};
    // Both balls are already the whole graph: every larger radius agrees.
    if (r >= ecc_a && r >= ecc_b) return {cap, true};
  }
  return {cap, true};
}

double LocalDistance::value() const { return std::ldexp(1.0, -int(exponent)); }

LocalDistance d_loc(const RootedGraph& a, const RootedGraph& b, Distance cap) {
  auto r = locality_radius(a, b, cap);
  return {r.radius, r.at_cap};
}

BallCensus ball_census(const Graph& g, Distance radius) {
  std::map<CanonicalCode, std::int64_t> counts;
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++counts[canonical_code(ball(g, v, radius))];
  BallCensus census;
  census.radius = radius;
  const auto total = std::int64_t(g.vertex_count());
  for (auto& [code, count] : counts) census.frequencies.emplace(code, Rational(count, total));
  return census;
}

Rational census_distance(const BallCensus& a, const BallCensus& b) {
  if (a.radius != b.radius) throw std::invalid_argument("census radii differ");
  Rational total(0);
  auto ia = a.frequencies.begin();
  auto ib = b.frequencies.begin();
  while (ia != a.frequencies.end() || ib != b.frequencies.end()) {
    if (ib == b.frequencies.end() || (ia != a.frequencies.end() && ia->first < ib->first)) {
      total += ia++->second;
    } else if (ia == a.frequencies.end() || ib->first < ia->first) {
      total += ib++->second;
    } else {
      Rational diff = ia->second - ib->second;
      total += diff < 0 ? -diff : diff;
      ++ia;
      ++ib;
    }
  }
  return total / 2;
}

nlohmann::json BallCensus::to_json() const {
  nlohmann::json freq = nlohmann::json::object();
  for (auto& [code, q] : frequencies) freq[code.hex()] = {{"num", q.numerator()}, {"den", q.denominator()}};
  return {{"radius", radius}, {"frequencies", freq}};
}

BallCensus BallCensus::from_json(const nlohmann::json& j) {
  BallCensus c;
  c.radius = j.at("radius").get<Distance>();
  for (auto& [hex, q] : j.at("frequencies").items())
    c.frequencies.emplace(CanonicalCode::from_hex(hex),
                          Rational(q.at("num").get<std::int64_t>(), q.at("den").get<std::int64_t>()));
  return c;
}

}  // namespace lll
