#include <doctest.h>

#include <random>

#include "lll/graph.hpp"
#include "oracles.hpp"

using namespace lll;

namespace {

Graph make(Family kind, std::uint32_t n, std::uint32_t r = 0, std::uint32_t w = 0, std::uint32_t h = 0) {
  return generate(FamilySpec{kind, n, r, w, h});
}

std::vector<Graph> fixtures() {
  return {make(Family::path, 7),        make(Family::cycle, 9),      make(Family::comb, 9, 3),
          make(Family::comb, 10, 4),    make(Family::grid, 0, 0, 4, 3), make(Family::grid_line, 3),
          make(Family::torus, 0, 0, 4, 5)};
}

}  // namespace

TEST_CASE("family sizes follow the construction formulas") {
  CHECK(make(Family::path, 3).vertex_count() == 4);
  CHECK(make(Family::path, 3).edge_count() == 3);
  CHECK(make(Family::cycle, 5).edge_count() == 5);
  CHECK(make(Family::comb, 9, 3).vertex_count() == 19);
  CHECK(make(Family::grid, 0, 0, 4, 3).vertex_count() == 12);
  CHECK(make(Family::grid, 0, 0, 4, 3).edge_count() == 17);
  CHECK(make(Family::torus, 0, 0, 4, 5).edge_count() == 40);
  for (std::uint32_t n : {1u, 2u, 5u, 30u}) CHECK(make(Family::grid_line, n).vertex_count() == 2 * n * n);
  for (std::uint32_t n : {1u, 7u, 20u, 400u})
    for (std::uint32_t r : {1u, 3u, 7u, 20u}) {
      if (r > n) continue;
      CHECK(make(Family::comb, n, r).vertex_count() == (n + 1) + ((n + r - 1) / r) * r);
    }
}

TEST_CASE("comb tooth bases are evenly spaced from index 0") {
  CHECK(comb_tooth_bases(9, 3) == std::vector<Vertex>{0, 3, 6});
  CHECK(comb_tooth_bases(10, 4) == std::vector<Vertex>{0, 3, 6});
  auto bases = comb_tooth_bases(400, 20);
  REQUIRE(bases.size() == 20);
  CHECK(bases.front() == 0);
  CHECK(bases.back() == 380);
}

TEST_CASE("invalid family parameters are rejected") {
  CHECK_THROWS_AS(make(Family::cycle, 0), std::invalid_argument);
  CHECK_THROWS_AS(make(Family::cycle, 2), std::invalid_argument);
  CHECK_THROWS_AS(make(Family::comb, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(make(Family::comb, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(make(Family::grid, 0, 0, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make(Family::torus, 0, 0, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(make(Family::path, 0), std::invalid_argument);
  CHECK(parse_family("grid_line") == Family::grid_line);
  CHECK_FALSE(parse_family("tree").has_value());
}

TEST_CASE("from_edges validates its input") {
  std::vector<Edge> loop{{0, 0}};
  std::vector<Edge> dup{{0, 1}, {1, 0}};
  std::vector<Edge> range{{0, 5}};
  std::vector<Edge> split{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(Graph::from_edges(2, loop), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, dup), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, range), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(4, split), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(0, {}), std::invalid_argument);
  CHECK(Graph::from_edges(1, {}).vertex_count() == 1);
}

TEST_CASE("BFS agrees with Floyd-Warshall on every fixture") {
  for (const auto& g : fixtures()) {
    auto fw = oracle::floyd_warshall(g);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      auto d = bfs_distances(g, s);
      for (Vertex t = 0; t < g.vertex_count(); ++t) REQUIRE(long(d[t]) == fw[s][t]);
    }
  }
}

TEST_CASE("truncated BFS stops after max_depth") {
  auto g = make(Family::path, 10);
  auto d = bfs_distances(g, 0, 3);
  CHECK(d[3] == 3);
  CHECK(d[4] == kUnreachable);
}

TEST_CASE("exact diameter reports the lexicographically smallest realizing pair") {
  for (const auto& g : fixtures()) {
    auto fw = oracle::floyd_warshall(g);
    long best = -1;
    Vertex bu = 0, bv = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
      for (Vertex v = u; v < g.vertex_count(); ++v)
        if (fw[u][v] > best) {
          best = fw[u][v];
          bu = u;
          bv = v;
        }
    auto d = diameter(g);
    CHECK(long(d.value) == best);
    CHECK(d.u == bu);
    CHECK(d.v == bv);
    CHECK(d.exact);
    auto sweep = diameter(g, DiameterMode::double_sweep);
    CHECK(sweep.value <= d.value);
    CHECK_FALSE(sweep.exact);
  }
}

TEST_CASE("comb(9,3) distances") {
  auto g = make(Family::comb, 9, 3);
  // Teeth hang off 0, 3, 6 with ids 10-12, 13-15, 16-18; the tips are 12 and 18.
  CHECK(bfs_distances(g, 12)[18] == 12);
  CHECK(diameter(g).value == 12);
  CHECK(eccentricity(g, 12) == 12);
}

TEST_CASE("balls are ordered by distance then id and induce subgraphs") {
  auto g = make(Family::grid, 0, 0, 5, 5);
  auto members = ball_vertices(g, 12, 1);
  REQUIRE(members.size() == 5);
  CHECK(members[0] == std::pair<Vertex, Distance>{12, 0});
  CHECK(members[1] == std::pair<Vertex, Distance>{7, 1});
  CHECK(members[4] == std::pair<Vertex, Distance>{17, 1});
  auto b = ball(g, 12, 1);
  CHECK(b.root == 0);
  CHECK(b.graph.vertex_count() == 5);
  CHECK(b.graph.edge_count() == 4);
  auto whole = ball(g, 0, 100);
  CHECK(whole.graph.edge_count() == g.edge_count());
}

TEST_CASE("uniform integrability margin of comb(9,3)") {
  std::vector<Graph> family{make(Family::comb, 9, 3)};
  // Only the interior tooth bases 3 and 6 have degree 3; base 0 is a body end.
  CHECK(uniform_integrability_margin(family, 2) == Rational(6, 19));
  CHECK(uniform_integrability_margin(family, 3) == Rational(0));
  std::vector<Graph> two{make(Family::path, 4), make(Family::torus, 0, 0, 3, 3)};
  CHECK(uniform_integrability_margin(two, 1) == Rational(4));
  CHECK_THROWS_AS(uniform_integrability_margin(std::span<const Graph>{}, 1), std::invalid_argument);
}

TEST_CASE("mass transport sides agree exactly") {
  auto g = make(Family::comb, 9, 3);
  TransportFunction at_two{[](Distance d, std::size_t, std::size_t) { return Rational(d == 2 ? 1 : 0); }};
  auto mt = mtp_check(g, at_two);
  CHECK(mt.sent == mt.received);
  // Brute force: the number of ordered pairs at distance 2, over |V|.
  auto fw = oracle::floyd_warshall(g);
  std::int64_t pairs = 0;
  for (auto& row : fw)
    for (long d : row) pairs += d == 2;
  CHECK(mt.sent == to_big(Rational(pairs, 19)));

  TransportFunction degree_biased{[](Distance d, std::size_t a, std::size_t b) {
    return Rational(std::int64_t(a * a + 3 * b), std::int64_t(d + 1));
  }};
  auto biased = mtp_check(g, degree_biased);
  CHECK(biased.sent == biased.received);

  TransportFunction negative{[](Distance, std::size_t, std::size_t) { return Rational(-1); }};
  CHECK_THROWS_AS(mtp_check(g, negative), std::invalid_argument);
}

TEST_CASE("distance matrix matches BFS and respects its limit") {
  auto g = make(Family::torus, 0, 0, 4, 5);
  auto m = DistanceMatrix::build(g);
  REQUIRE(m.has_value());
  auto fw = oracle::floyd_warshall(g);
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = 0; v < g.vertex_count(); ++v) REQUIRE(long((*m)(u, v)) == fw[u][v]);
  CHECK_FALSE(DistanceMatrix::build(g, 10).has_value());
}

TEST_CASE("mass transport totals do not overflow 64-bit rationals") {
  // On a path with n vertices, sum_u sum_v 1/(1 + |u - v|) equals
  // n + 2 sum_{d=1}^{n-1} (n - d)/(1 + d); the common denominator is
  // lcm(1..n), far beyond 64 bits for n = 61.
  const std::int64_t n = 61;
  auto g = make(Family::path, std::uint32_t(n - 1));
  TransportFunction harmonic{[](Distance d, std::size_t, std::size_t) { return Rational(1, std::int64_t(d) + 1); }};
  auto mt = mtp_check(g, harmonic);
  BigRational expected(n);
  for (std::int64_t d = 1; d < n; ++d) expected += BigRational(2 * (n - d), d + 1);
  expected /= n;
  CHECK(mt.sent == expected);
  CHECK(mt.received == expected);
}
