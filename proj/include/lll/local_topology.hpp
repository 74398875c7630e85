#pragma once

#include <compare>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "lll/graph.hpp"
#include "lll/rational.hpp"

namespace lll {

/// Byte string naming the rooted-isomorphism class of a finite rooted
/// graph. Equal codes iff the graphs are isomorphic by a root-preserving
/// map; codes are identical across runs and platforms.
struct CanonicalCode {
  std::string bytes;

  std::string hex() const;
  static CanonicalCode from_hex(std::string_view hex);

  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const RootedGraph& rg);

/// Canonical relabeling of `rg`: entry i is the new position of vertex i.
/// The root always receives position 0.
std::vector<Vertex> canonical_labeling(const RootedGraph& rg);

struct LocalityRadius {
  Distance radius = 0;
  /// Balls agreed at every radius up to the cap; the true supremum may
  /// be larger.
  bool at_cap = false;
};

/// Largest r <= cap with B_r(a) and B_r(b) rooted-isomorphic.
LocalityRadius locality_radius(const RootedGraph& a, const RootedGraph& b, Distance cap);

struct LocalDistance {
  Distance exponent = 0;  // d_loc = 2^-exponent
  bool at_cap = false;    // if set, the value is only an upper bound

  double value() const;
};

LocalDistance d_loc(const RootedGraph& a, const RootedGraph& b, Distance cap);

/// Frequencies of radius-r ball classes over all vertices of a graph.
struct BallCensus {
  Distance radius = 0;
  std::map<CanonicalCode, Rational> frequencies;

  nlohmann::json to_json() const;
  static BallCensus from_json(const nlohmann::json& j);
};

BallCensus ball_census(const Graph& g, Distance radius);

/// Total-variation distance between two censuses of equal radius.
Rational census_distance(const BallCensus& a, const BallCensus& b);

}  // namespace lll
