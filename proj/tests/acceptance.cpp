// Acceptance suite: one check per criterion, each printing PASS or FAIL with
// the measured quantities. Exit status is 0 only if every selected check
// passes.
//
//   lll_acceptance                 run everything
//   lll_acceptance --only AC3 AC6  run a subset

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lll/geodesic.hpp"
#include "lll/gh_metric.hpp"
#include "lll/graph.hpp"
#include "lll/io.hpp"
#include "lll/local_gh.hpp"
#include "lll/local_topology.hpp"
#include "lll/scan.hpp"
#include "oracles.hpp"

using namespace lll;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records one sub-check; the criterion passes only if all of them do.
  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    detail << "\n    [" << (ok ? "ok" : "FAILED") << "] " << what;
  }
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

unsigned threads() {
  if (const char* env = std::getenv("LLL_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return unsigned(t);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// A full default scan (x = 0.2, scales 1 .. 2 diam, ratio sqrt 2), timed.
std::pair<ScanReport, double> timed_scan(const FamilySpec& spec) {
  ScanOptions opt;
  opt.threads = threads();
  auto start = std::chrono::steady_clock::now();
  auto report = run_scan(labeled(spec), opt);
  return {std::move(report), seconds_since(start)};
}

// Largest fraction any exact evaluation could reach: vertices whose
// certified lower bound is at least the threshold at every scale of the grid
// can never join A.
std::string certified_ceiling(const ScanReport& r) {
  std::size_t excluded = 0;
  for (const auto& rec : r.records) {
    bool always = true;
    for (const auto& b : rec.bounds) always = always && b.lower >= r.threshold;
    excluded += always;
  }
  const std::size_t possible = r.records.size() - excluded;
  return std::to_string(excluded) + " vertices certified outside A at every scale; fraction <= " +
         std::to_string(possible) + "/" + std::to_string(r.records.size()) + " = " +
         fmt(double(possible) / double(r.records.size()));
}

Outcome ac1() {
  Outcome o;
  auto [comb, comb_s] = timed_scan(FamilySpec{Family::comb, 400, 20});
  const double need = 0.9 / comb.c();
  o.expect(comb.fraction() >= 0.45 && comb.fraction() >= need,
           "comb(400,20): |V|=" + std::to_string(comb.vertex_count) + " diam=" + std::to_string(comb.diameter) +
               " C=" + fmt(comb.c()) + " fraction=" + fmt(comb.fraction()) + " (need >= 0.45 and >= 0.9/C=" +
               fmt(need) + ")");
  o.detail << "\n    " << certified_ceiling(comb);
  o.expect(comb_s < 300.0, "comb(400,20) scan runtime " + fmt(comb_s, 3) + " s (< 300 s)");
  auto [line, line_s] = timed_scan(FamilySpec{Family::grid_line, 30});
  o.expect(line.fraction() >= 0.40 && line.fraction() <= 0.70,
           "grid_line(30): C=" + fmt(line.c()) + " fraction=" + fmt(line.fraction()) + " (need in [0.40, 0.70])");
  o.expect(line_s < 300.0, "grid_line(30) scan runtime " + fmt(line_s, 3) + " s (< 300 s)");
  return o;
}

Outcome ac2() {
  Outcome o;
  auto g = generate(FamilySpec{Family::comb, 400, 20});
  LocalGhEvaluator eval(g);
  double min_lower = std::numeric_limits<double>::infinity();
  Vertex argmin = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double lo = eval.evaluate(v, 20.0).lower;
    if (lo < min_lower) {
      min_lower = lo;
      argmin = v;
    }
  }
  o.expect(min_lower >= 0.02, "min over v of the lower bound at s=20: " + fmt(min_lower) + " at vertex " +
                                  std::to_string(argmin) + " (need >= 0.02)");
  auto [scan, secs] = timed_scan(FamilySpec{Family::comb, 400, 20});
  o.expect(scan.fraction() >= 0.45, "vertices with min upper < 0.2 over the full grid: " +
                                        std::to_string(scan.in_a_count()) + "/" +
                                        std::to_string(scan.vertex_count) + " = " + fmt(scan.fraction()) +
                                        " (need >= 0.45)");
  o.detail << "\n    " << certified_ceiling(scan);
  return o;
}

Outcome ac3() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  auto g = generate(FamilySpec{Family::cycle, 1000});
  LocalGhEvaluator eval(g);
  double worst = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) worst = std::max(worst, eval.evaluate(v, 30.0).upper);
  o.expect(worst <= 0.05, "C_1000, s=30: max over v of the upper bound = " + fmt(worst) + " (need <= 0.05)");
  o.detail << "\n    runtime " << fmt(seconds_since(start), 3) << " s";
  return o;
}

// Random small instance of a random family.
Graph random_family_graph(std::mt19937_64& rng) {
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) { return lo + std::uint32_t(rng() % (hi - lo + 1)); };
  switch (rng() % 6) {
    case 0: return generate(FamilySpec{Family::path, pick(1, 25)});
    case 1: return generate(FamilySpec{Family::cycle, pick(3, 25)});
    case 2: {
      auto n = pick(1, 25);
      return generate(FamilySpec{Family::comb, n, pick(1, n)});
    }
    case 3: return generate(FamilySpec{Family::grid, 0, 0, pick(1, 6), pick(1, 6)});
    case 4: return generate(FamilySpec{Family::grid_line, pick(1, 4)});
    default: return generate(FamilySpec{Family::torus, 0, 0, pick(3, 6), pick(3, 6)});
  }
}

// Random non-negative transport rule depending on distance and degrees.
TransportFunction random_rule(std::mt19937_64& rng) {
  std::int64_t c[6];
  for (auto& x : c) x = std::int64_t(rng() % 7);
  const Distance target = Distance(rng() % 4);
  switch (rng() % 3) {
    case 0:
      return {[=](Distance d, std::size_t a, std::size_t b) {
        return Rational(c[0] * std::int64_t(d * d) + c[1] * std::int64_t(a) + c[2] * std::int64_t(b * b) + c[3],
                        std::int64_t(d) + 1 + c[4]);
      }};
    case 1:
      return {[=](Distance d, std::size_t a, std::size_t b) {
        return d == target ? Rational(std::int64_t(a) * (c[0] + 1), std::int64_t(b) + c[1] + 1) : Rational(0);
      }};
    default:
      return {[=](Distance d, std::size_t a, std::size_t b) {
        return Rational(std::int64_t(a * b) + c[5], std::int64_t(1) << std::min<Distance>(d, 20));
      }};
  }
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t equal = 0;
  for (int t = 0; t < 50; ++t) {
    auto g = random_family_graph(rng);
    auto mt = mtp_check(g, random_rule(rng));
    if (mt.sent == mt.received) {
      ++equal;
    } else {
      o.detail << "\n    pair " << t << ": |V|=" << g.vertex_count() << " sent=" << to_string(mt.sent)
               << " received=" << to_string(mt.received);
    }
  }
  o.expect(equal == 50, "exactly equal sides on " + std::to_string(equal) + "/50 randomized (graph, F) pairs");
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t violations = 0, inverted = 0;
  double worst_slack = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    auto x = oracle::from_matrix(oracle::random_metric(n, rng, 3.0), rng() % n);
    const double k = 0.25 + double(rng() % 16) / 4.0;
    const std::size_t points = 3 + 2 * (rng() % 3);  // 3, 5 or 7 net points
    const double delta = 2.0 * k / double(points - 1);
    const double exact = gh_exact_small(x, Segment(k).net(points));
    auto b = gh_to_segment_bounds(x, k);
    inverted += b.lower > b.upper;
    const double slack = std::max(b.lower - exact, exact - b.upper) - delta / 2;
    worst_slack = std::max(worst_slack, slack);
    violations += slack > 1e-9;
  }
  o.expect(violations == 0 && inverted == 0,
           "200 random spaces (<= 6 points) against nets of <= 7 points: " + std::to_string(violations) +
               " sandwich violations, " + std::to_string(inverted) + " inverted intervals; worst excess over " +
               "delta/2 = " + fmt(worst_slack));
  return o;
}

Outcome ac6() {
  Outcome o;
  auto c100 = generate(FamilySpec{Family::cycle, 100}), c200 = generate(FamilySpec{Family::cycle, 200});
  auto lr = locality_radius({c100, 0}, {c200, 0}, 60);
  auto d = d_loc({c100, 0}, {c200, 0}, 60);
  o.expect(lr.radius == 49 && !lr.at_cap, "locality_radius = " + std::to_string(lr.radius) + " (need 49)");
  o.expect(d.value() == std::ldexp(1.0, -49), "d_loc = 2^-" + std::to_string(d.exponent) + " (need 2^-49)");
  return o;
}

Outcome ac7() {
  Outcome o;
  auto census = ball_census(generate(FamilySpec{Family::grid_line, 50}), 2);
  auto z_ball = canonical_code(ball(generate(FamilySpec{Family::path, 4}), 2, 2));
  auto it = census.frequencies.find(z_ball);
  const double q = it == census.frequencies.end() ? 0.0 : boost::rational_cast<double>(it->second);
  std::ostringstream exact;
  if (it != census.frequencies.end()) exact << " = " << it->second;
  o.expect(std::abs(q - 0.5) <= 0.05,
           "grid_line(50), r=2: Z-ball class frequency" + exact.str() + " ~ " + fmt(q) + " (need within 0.05 of 1/2)");
  return o;
}

Outcome ac8() {
  Outcome o;
  std::vector<FamilySpec> specs;
  for (std::uint32_t n : {1u, 2u, 7u, 30u}) specs.push_back({Family::path, n});
  for (std::uint32_t n : {3u, 4u, 11u, 40u}) specs.push_back({Family::cycle, n});
  for (auto [n, r] : {std::pair{9u, 3u}, {10u, 4u}, {25u, 5u}, {40u, 7u}, {12u, 12u}, {6u, 1u}})
    specs.push_back({Family::comb, n, r});
  for (auto [w, h] : {std::pair{1u, 1u}, {1u, 6u}, {5u, 3u}, {8u, 8u}}) specs.push_back({Family::grid, 0, 0, w, h});
  for (std::uint32_t n : {1u, 2u, 5u, 10u}) specs.push_back({Family::grid_line, n});
  for (auto [w, h] : {std::pair{3u, 3u}, {4u, 7u}, {9u, 9u}}) specs.push_back({Family::torus, 0, 0, w, h});

  std::mt19937_64 rng(8);
  std::size_t geodesic_bad = 0, partition_bad = 0, adjacency_bad = 0, window_bad = 0, window_pairs = 0;
  for (const auto& spec : specs) {
    auto g = generate(spec);
    auto dist = DistanceMatrix::build(g);
    auto geo = max_geodesic(g);
    auto dec = project_cells(g, geo);
    const std::size_t L = geo.vertices.size();
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j)
        geodesic_bad += (*dist)(geo.vertices[i], geo.vertices[j]) != Distance(i > j ? i - j : j - i);

    std::vector<int> seen(g.vertex_count(), 0);
    for (std::size_t n = 0; n < dec.size(); ++n)
      for (Vertex v : dec.cells[n]) {
        ++seen[v];
        partition_bad += dec.projection[v] != n;
      }
    for (int s : seen) partition_bad += s != 1;

    for (auto [u, v] : g.edges()) {
      const std::size_t n = dec.projection[u], m = dec.projection[v];
      if (n == m) continue;
      adjacency_bad += dec.cell_diameters[n] + dec.cell_diameters[m] + 1 < (n > m ? n - m : m - n);
    }

    for (int w = 0; w < 8; ++w) {
      const std::size_t a = rng() % L, b = std::min(L - 1, a + rng() % 6);
      Distance radius = 0;
      std::vector<Vertex> members;
      for (std::size_t n = a; n <= b; ++n) {
        radius = std::max(radius, dec.cell_radius(n));
        members.insert(members.end(), dec.cells[n].begin(), dec.cells[n].end());
      }
      for (Vertex u : members)
        for (Vertex v : members) {
          const long gap = std::labs(long(dec.projection[u]) - long(dec.projection[v]));
          window_bad += std::labs(long((*dist)(u, v)) - gap) > 2 * long(radius);
          ++window_pairs;
        }
    }
  }
  o.expect(geodesic_bad == 0, std::to_string(specs.size()) + " fixtures: d(X_i, X_j) != |i-j| in " +
                                  std::to_string(geodesic_bad) + " pairs");
  o.expect(partition_bad == 0, "cell partition violations: " + std::to_string(partition_bad));
  o.expect(adjacency_bad == 0, "adjacent-cell inequality violations: " + std::to_string(adjacency_bad));
  o.expect(window_bad == 0, "window estimate violations: " + std::to_string(window_bad) + " of " +
                                std::to_string(window_pairs) + " pairs");
  return o;
}

Outcome ac9() {
  Outcome o;
  const std::uint32_t n = 20;
  auto g = generate(FamilySpec{Family::grid_line, n});
  // Path vertex n^2 + i sits at distance i + 1 from the grid corner, so the
  // midpoint of the line (corner to far end, length n^2) is n^2 + n^2/2 - 1.
  const Vertex mid = Vertex(n * n + n * n / 2 - 1);
  auto dec = project_cells(g, max_geodesic(g), false);
  const std::size_t center = dec.projection[mid];
  auto parts = separation_components(g, dec, 5, center);
  std::ostringstream sizes;
  for (auto s : parts) sizes << ' ' << s;
  o.expect(parts.size() == 2, "separation at geodesic index " + std::to_string(center) + " (vertex " +
                                  std::to_string(mid) + "), N=5: " + std::to_string(parts.size()) +
                                  " components, sizes" + sizes.str() + " (need exactly 2)");
  auto growth = growth_profile(g, mid, 100);
  double worst = 0.0;
  for (std::size_t r = 10; r <= 100; ++r) worst = std::max(worst, growth[r - 1]);
  o.expect(worst <= 4.0, "max |B_r|/r over 10 <= r <= 100 = " + fmt(worst) + " (need <= 4)");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<Outcome()>> checks{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};

  CLI::App app{"Acceptance checks"};
  std::vector<std::string> only;
  app.add_option("--only", only, "Criteria to run (default: all)");
  CLI11_PARSE(app, argc, argv);
  if (only.empty())
    for (const auto& [name, fn] : checks) only.push_back(name);

  int failed = 0;
  for (const auto& name : only) {
    auto it = checks.find(name);
    if (it == checks.end()) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }
    try {
      auto out = it->second();
      std::cout << name << ' ' << (out.pass ? "PASS" : "FAIL") << out.detail.str() << std::endl;
      failed += !out.pass;
    } catch (const std::exception& e) {
      std::cout << name << " FAIL\n    exception: " << e.what() << std::endl;
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
