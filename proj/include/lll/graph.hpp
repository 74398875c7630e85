#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lll/rational.hpp"

namespace lll {

using Vertex = std::uint32_t;
using Distance = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

/// Finite, connected, simple undirected graph stored as sorted adjacency
/// lists in compressed form. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on vertices 0..n-1. Throws std::invalid_argument on
  /// out-of-range ids, self-loops, repeated edges, n == 0 or a
  /// disconnected result.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool contains(Vertex v) const { return v < vertex_count(); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

struct RootedGraph {
  Graph graph;
  Vertex root = 0;
};

enum class Family { path, cycle, comb, grid, grid_line, torus };

std::string to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Parameters of a generated family. `n` is used by path, cycle, comb and
/// grid_line, `r` by comb, `width`/`height` by grid and torus.
struct FamilySpec {
  Family kind = Family::path;
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;

  /// Throws std::invalid_argument when the parameters do not describe a
  /// simple connected member of the family.
  void validate() const;
  std::string describe() const;
};

/// Body vertex indices that carry a tooth in comb(n, r).
std::vector<Vertex> comb_tooth_bases(std::uint32_t n, std::uint32_t r);

Graph generate(const FamilySpec& spec);

std::vector<Distance> bfs_distances(const Graph& g, Vertex source);

/// BFS from `source` that stops after the layer at `max_depth`. Vertices
/// beyond it keep kUnreachable.
std::vector<Distance> bfs_distances(const Graph& g, Vertex source, Distance max_depth);

enum class DiameterMode { exact, double_sweep };

struct DiameterResult {
  Distance value = 0;
  Vertex u = 0;
  Vertex v = 0;
  /// False for the double-sweep estimate, which is only a lower bound.
  bool exact = true;
};

/// Exact mode reports the lexicographically smallest (min id, max id)
/// realizing pair.
DiameterResult diameter(const Graph& g, DiameterMode mode = DiameterMode::exact);

Distance eccentricity(const Graph& g, Vertex v);

/// Vertices within distance r of v, ordered by (distance, id), paired with
/// their distance.
std::vector<std::pair<Vertex, Distance>> ball_vertices(const Graph& g, Vertex v, Distance r);

/// Induced subgraph on the radius-r ball, rooted at v; vertex i of the
/// result is the i-th entry of ball_vertices(g, v, r).
RootedGraph ball(const Graph& g, Vertex v, Distance r);

/// Worst-case truncated degree mass: max over the family of
/// (1/|V|) * sum of deg(v) over vertices with deg(v) > cutoff.
Rational uniform_integrability_margin(std::span<const Graph> family, std::size_t cutoff);

/// A transport rule depending only on d(u, v), deg(u) and deg(v).
/// Values must be non-negative.
struct TransportFunction {
  std::function<Rational(Distance distance, std::size_t deg_from, std::size_t deg_to)> rule;

  Rational operator()(Distance d, std::size_t deg_from, std::size_t deg_to) const {
    return rule(d, deg_from, deg_to);
  }
};

struct MassTransport {
  BigRational sent;      // (1/|V|) sum_u sum_v F(u, v)
  BigRational received;  // (1/|V|) sum_u sum_v F(v, u)
};

MassTransport mtp_check(const Graph& g, const TransportFunction& f);

/// Dense all-pairs hop distances. Only built for graphs small enough to
/// hold |V|^2 16-bit entries.
class DistanceMatrix {
 public:
  static constexpr std::size_t kDefaultVertexLimit = 8000;

  static std::optional<DistanceMatrix> build(const Graph& g,
                                             std::size_t vertex_limit = kDefaultVertexLimit);

  std::size_t size() const { return n_; }
  Distance operator()(Vertex u, Vertex v) const { return data_[std::size_t(u) * n_ + v]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint16_t> data_;
};

}  // namespace lll
