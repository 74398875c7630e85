#pragma once

// Shared routines for comparing a finite pointed space against the segment
// [-k, k]. The metric is supplied as a callable d(i, j) over local indices
// so the same code serves explicit tables and graph balls.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace lll::detail {

/// Distortion of the correspondence
///   {(x, c(x))} U {(rep(t), t) : t in [-k, k]}
/// where rep(t) is the point whose coordinate is nearest to t. Coordinates
/// must already lie in [-k, k]. Every t in [-k, k] is related, so the value
/// is exact for the continuum, not a grid approximation.
template <class Metric>
double continuum_distortion(std::size_t n, const Metric& d, std::span<const double> coord, double k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(double(d(i, j)) - std::abs(coord[i] - coord[j])));

  // Representatives: one point per distinct coordinate value, smallest index.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return coord[a] < coord[b]; });
  std::vector<std::size_t> reps;
  for (std::size_t i : order)
    if (reps.empty() || coord[reps.back()] < coord[i]) reps.push_back(i);

  // Voronoi cells of the representatives inside [-k, k].
  const std::size_t m = reps.size();
  std::vector<double> lo(m), hi(m);
  for (std::size_t a = 0; a < m; ++a) {
    lo[a] = a == 0 ? -k : 0.5 * (coord[reps[a - 1]] + coord[reps[a]]);
    hi[a] = a + 1 == m ? k : 0.5 * (coord[reps[a]] + coord[reps[a + 1]]);
  }

  auto spread = [](double dist, double lo_gap, double hi_gap) {
    return std::max(std::abs(dist - lo_gap), std::abs(dist - hi_gap));
  };

  // Point-to-cell pairs: |c(x) - t| sweeps [min, max] continuously.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < m; ++a) {
      double c = coord[i];
      double near = c < lo[a] ? lo[a] - c : (c > hi[a] ? c - hi[a] : 0.0);
      double far = std::max(std::abs(c - lo[a]), std::abs(c - hi[a]));
      worst = std::max(worst, spread(double(d(i, reps[a])), near, far));
    }
  }
  // Cell-to-cell pairs.
  for (std::size_t a = 0; a < m; ++a) {
    worst = std::max(worst, hi[a] - lo[a]);
    for (std::size_t b = a + 1; b < m; ++b) {
      double gap = std::max(0.0, lo[b] - hi[a]);
      double span = hi[b] - lo[a];
      worst = std::max(worst, spread(double(d(reps[a], reps[b])), gap, span));
    }
  }
  return worst;
}

/// Largest half-gap of the Voronoi cells of the coordinates inside [-k, k];
/// every t in [-k, k] lies within this distance of some coordinate.
inline double voronoi_reach(std::span<const double> coord, double k) {
  std::vector<double> c(coord.begin(), coord.end());
  std::sort(c.begin(), c.end());
  if (c.empty()) return k;
  double reach = std::max(c.front() + k, k - c.back());
  for (std::size_t i = 1; i < c.size(); ++i) reach = std::max(reach, 0.5 * (c[i] - c[i - 1]));
  return reach;
}

/// max over labelled triples of min over the choice of middle point of
/// |d(a,c) - d(a,b) - d(b,c)|. Full enumeration when C(n,3) <= budget,
/// otherwise `budget` triples from a fixed-seed generator.
template <class Metric>
double triple_deviation(const Metric& d, std::size_t a, std::size_t b, std::size_t c) {
  double ab = double(d(a, b)), bc = double(d(b, c)), ac = double(d(a, c));
  return std::min({std::abs(ac - ab - bc), std::abs(ab - ac - bc), std::abs(bc - ab - ac)});
}

template <class Metric>
double line_deviation(std::size_t n, const Metric& d, std::size_t budget) {
  if (n < 3) return 0.0;
  auto triple = [&](std::size_t a, std::size_t b, std::size_t c) { return triple_deviation(d, a, b, c); };
  const double total = double(n) * double(n - 1) * double(n - 2) / 6.0;
  double worst = 0.0;
  if (total <= double(budget)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) worst = std::max(worst, triple(a, b, c));
    return worst;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < budget; ++s) {
    std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    worst = std::max(worst, triple(a, b, c));
  }
  return worst;
}

}  // namespace lll::detail
