#include "lll/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace lll {

namespace {

std::vector<Vertex> choose_vertices(std::size_t n, std::optional<std::size_t> sample, std::uint64_t seed,
                                    bool& sampled) {
  std::size_t want = sample.value_or(n <= kFullScanLimit ? n : kFullScanLimit);
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex(0));
  sampled = want < n;
  if (!sampled) return all;
  // Partial Fisher-Yates with a fixed-seed generator.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < want; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(want);
  std::sort(all.begin(), all.end());
  return all;
}

template <class T>
T require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("scan report lacks field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scan report field '") + key + "': " + e.what());
  }
}

}  // namespace

double ScanReport::c() const { return diameter == 0 ? double(vertex_count) : double(vertex_count) / double(diameter); }

std::size_t ScanReport::in_a_count() const {
  return std::size_t(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.in_a; }));
}

double ScanReport::fraction() const {
  const std::size_t denom = sampled ? records.size() : vertex_count;
  return denom == 0 ? 0.0 : double(in_a_count()) / double(denom);
}

std::optional<double> ScanReport::min_upper_in_a() const {
  std::optional<double> best;
  for (const auto& r : records)
    if (r.in_a && (!best || r.min_upper < *best)) best = r.min_upper;
  return best;
}

ScanReport ScanReport::with_threshold(double x) const {
  ScanReport out = *this;
  out.threshold = x;
  for (auto& r : out.records) r.in_a = r.min_upper < x;
  return out;
}

nlohmann::json ScanReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& b : r.bounds) bounds.push_back(lll::to_json(b));
    recs.push_back({{"vertex", r.vertex},
                    {"bounds", bounds},
                    {"min_upper", r.min_upper},
                    {"max_lower", r.max_lower},
                    {"best_scale", r.best_scale},
                    {"in_A", r.in_a}});
  }
  return {{"graph",
           {{"family", family},
            {"params", params},
            {"vertices", vertex_count},
            {"edges", edge_count},
            {"diameter", diameter},
            {"C", c()}}},
          {"threshold", threshold},
          {"scales", scales},
          {"k_max", k_max},
          {"tail", tail},
          {"sampled", sampled},
          {"seed", seed},
          {"records", recs},
          {"summary", {{"evaluated", records.size()}, {"in_A", in_a_count()}, {"fraction", fraction()}}}};
}

ScanReport ScanReport::from_json(const nlohmann::json& j) {
  ScanReport r;
  const auto graph = require<nlohmann::json>(j, "graph");
  r.family = require<std::string>(graph, "family");
  r.params = graph.value("params", nlohmann::json::object());
  r.vertex_count = require<std::size_t>(graph, "vertices");
  r.edge_count = require<std::size_t>(graph, "edges");
  r.diameter = require<Distance>(graph, "diameter");
  r.threshold = require<double>(j, "threshold");
  r.scales = require<std::vector<double>>(j, "scales");
  r.k_max = require<std::size_t>(j, "k_max");
  r.tail = require<double>(j, "tail");
  r.sampled = require<bool>(j, "sampled");
  r.seed = require<std::uint64_t>(j, "seed");
  for (const auto& rec : require<nlohmann::json>(j, "records")) {
    VertexRecord v;
    v.vertex = require<Vertex>(rec, "vertex");
    v.min_upper = require<double>(rec, "min_upper");
    v.max_lower = require<double>(rec, "max_lower");
    v.best_scale = require<double>(rec, "best_scale");
    v.in_a = require<bool>(rec, "in_A");
    for (const auto& b : require<nlohmann::json>(rec, "bounds")) {
      ScaleBound sb;
      sb.scale = require<double>(b, "scale");
      sb.lower = require<double>(b, "lower");
      sb.upper = require<double>(b, "upper");
      sb.k_max = require<std::size_t>(b, "k_max");
      sb.tail = require<double>(b, "tail");
      v.bounds.push_back(sb);
    }
    if (v.in_a != (v.min_upper < r.threshold)) throw FormatError("record membership disagrees with threshold");
    r.records.push_back(std::move(v));
  }
  const auto summary = require<nlohmann::json>(j, "summary");
  if (require<double>(summary, "fraction") != r.fraction() ||
      require<std::size_t>(summary, "in_A") != r.in_a_count())
    throw FormatError("summary disagrees with per-vertex records");
  return r;
}

void ScanReport::write_csv(std::ostream& out) const {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "vertex,scale,lower,upper,k_max,tail,min_upper,in_A\n";
  for (const auto& r : records)
    for (const auto& b : r.bounds)
      out << r.vertex << ',' << b.scale << ',' << b.lower << ',' << b.upper << ',' << b.k_max << ',' << b.tail
          << ',' << r.min_upper << ',' << (r.in_a ? 1 : 0) << '\n';
  out.precision(old);
}

ScanReport run_scan(const LabeledGraph& lg, const ScanOptions& options) {
  const Graph& g = lg.graph;
  if (!(options.threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  ScanReport report;
  report.family = lg.family;
  report.params = lg.params;
  report.vertex_count = g.vertex_count();
  report.edge_count = g.edge_count();
  const bool exact_diameter = g.vertex_count() <= 20000;
  report.diameter = diameter(g, exact_diameter ? DiameterMode::exact : DiameterMode::double_sweep).value;
  report.threshold = options.threshold;
  const double top = options.scale_max.value_or(std::max(options.scale_min, 2.0 * double(report.diameter)));
  report.scales = geometric_scales(options.scale_min, top, options.scale_ratio);
  report.k_max = options.gh.k_max;
  report.tail = tail_bound(options.gh.k_max);
  report.seed = options.seed;

  const auto vertices = choose_vertices(g.vertex_count(), options.sample, options.seed, report.sampled);
  report.records.resize(vertices.size());

  const LocalGhEvaluator eval(g, options.gh);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < vertices.size(); i = next++) {
        auto scan = eval.scan(vertices[i], report.scales);
        VertexRecord& rec = report.records[i];
        rec.vertex = vertices[i];
        rec.bounds = std::move(scan.bounds);
        for (auto& b : rec.bounds) b.summands.clear();
        rec.min_upper = scan.min_upper;
        rec.max_lower = scan.max_lower;
        rec.best_scale = scan.best_scale;
        rec.in_a = rec.min_upper < options.threshold;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = vertices.size();
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

std::string report_row(const ScanReport& r) {
  std::ostringstream row;
  row.precision(std::numeric_limits<double>::max_digits10);
  row << r.family << ',';
  if (r.params.contains("n")) row << r.params["n"].dump();
  row << ',' << r.vertex_count << ',' << r.diameter << ',' << r.c() << ',' << r.threshold << ',' << r.fraction()
      << ',';
  if (auto m = r.min_upper_in_a()) row << *m;
  return row.str();
}

}  // namespace lll
