// Command-line harness: generate graphs, scan local GH bounds, compute ball
// censuses, analyse maximal geodesics and aggregate scan reports.
//
// Exit codes: 0 success, 1 I/O or schema error, 2 usage error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lll/geodesic.hpp"
#include "lll/graph.hpp"
#include "lll/io.hpp"
#include "lll/local_topology.hpp"
#include "lll/scan.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_threads() {
  if (const char* env = std::getenv("LLL_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t > 0) return unsigned(t);
    } catch (const std::exception&) {
    }
    throw UsageError("LLL_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Writes to `path`, or stdout when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw lll::FormatError("cannot open " + path + " for writing");
  write(out);
  if (!out) throw lll::FormatError("write failed for " + path);
}

nlohmann::json rational_json(const lll::Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}}; }

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::uint32_t n = 0, r = 0, width = 0, height = 0;
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  auto kind = lll::parse_family(a.family);
  if (!kind) throw UsageError("unknown family '" + a.family + "'");
  lll::FamilySpec spec{*kind, a.n, a.r, a.width, a.height};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto g = lll::labeled(spec);
  auto diam = lll::diameter(g.graph);
  nlohmann::json summary = {{"family", g.family},
                            {"params", g.params},
                            {"vertices", g.graph.vertex_count()},
                            {"edges", g.graph.edge_count()},
                            {"diameter", diam.value},
                            {"C", diam.value == 0 ? double(g.graph.vertex_count())
                                                  : double(g.graph.vertex_count()) / diam.value}};
  if (a.output.empty()) {
    lll::write_graph_text(std::cout, g);
    std::cerr << summary.dump() << '\n';
  } else {
    lll::save_graph(a.output, g);
    std::cout << summary.dump() << '\n';
  }
  return 0;
}

// ---- scan -----------------------------------------------------------------

struct ScanArgs {
  std::string graph;
  double threshold = 0.2;
  double ratio = std::sqrt(2.0);
  double scale_min = 1.0;
  double scale_max = 0.0;
  std::size_t k_max = 16;
  std::string sample = "auto";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string coordinate = "both";
  std::size_t exact_limit = 96;
  std::string output;
  std::string csv;
};

int cmd_scan(const ScanArgs& a) {
  lll::ScanOptions opt;
  opt.threshold = a.threshold;
  opt.scale_ratio = a.ratio;
  opt.scale_min = a.scale_min;
  if (a.scale_max > 0.0) opt.scale_max = a.scale_max;
  opt.gh.k_max = a.k_max;
  opt.gh.exact_limit = a.exact_limit;
  opt.seed = a.seed;
  opt.threads = a.threads > 0 ? a.threads : default_threads();
  if (a.coordinate == "local") opt.gh.source = lll::CoordinateSource::local;
  else if (a.coordinate == "geodesic") opt.gh.source = lll::CoordinateSource::geodesic;
  else if (a.coordinate == "both") opt.gh.source = lll::CoordinateSource::both;
  else throw UsageError("--coordinate must be local, geodesic or both");
  if (a.sample == "all") {
    opt.sample = std::numeric_limits<std::size_t>::max();
  } else if (a.sample != "auto") {
    try {
      std::size_t pos = 0;
      opt.sample = std::stoull(a.sample, &pos);
      if (pos != a.sample.size() || *opt.sample == 0) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw UsageError("--sample must be 'all', 'auto' or a positive count");
    }
  }
  if (!(a.threshold > 0.0)) throw UsageError("--threshold must be positive");
  if (!(a.ratio > 1.0)) throw UsageError("--ratio must exceed 1");
  if (!(a.scale_min >= 1.0)) throw UsageError("--scale-min must be at least 1");
  if (opt.scale_max && *opt.scale_max < a.scale_min) throw UsageError("--scale-max below --scale-min");
  if (a.k_max < 1 || a.k_max > 60) throw UsageError("--k-max must be in [1, 60]");

  auto g = lll::load_graph(a.graph);
  auto report = lll::run_scan(g, opt);
  emit(a.output, [&](std::ostream& out) { out << report.to_json().dump(1) << '\n'; });
  if (!a.csv.empty()) emit(a.csv, [&](std::ostream& out) { report.write_csv(out); });
  std::cerr << "fraction " << report.fraction() << " (" << report.in_a_count() << " of "
            << (report.sampled ? report.records.size() : report.vertex_count) << ")\n";
  return 0;
}

// ---- census ---------------------------------------------------------------

struct CensusArgs {
  std::vector<std::string> graphs;
  long long radius = -1;
  std::string output;
};

int cmd_census(const CensusArgs& a) {
  if (a.radius < 0) throw UsageError("--radius must be non-negative");
  const auto r = lll::Distance(a.radius);
  std::vector<lll::BallCensus> censuses;
  nlohmann::json graphs = nlohmann::json::array();
  for (const auto& path : a.graphs) {
    auto g = lll::load_graph(path);
    censuses.push_back(lll::ball_census(g.graph, r));
    graphs.push_back({{"path", path}, {"family", g.family}, {"params", g.params},
                      {"census", censuses.back().to_json()}});
  }
  nlohmann::json tv = nlohmann::json::array(), tv_exact = nlohmann::json::array();
  for (const auto& x : censuses) {
    nlohmann::json row = nlohmann::json::array(), exact = nlohmann::json::array();
    for (const auto& y : censuses) {
      auto d = lll::census_distance(x, y);
      row.push_back(lll::to_double(d));
      exact.push_back(rational_json(d));
    }
    tv.push_back(row);
    tv_exact.push_back(exact);
  }
  nlohmann::json out = {{"radius", r}, {"graphs", graphs}, {"tv", tv}, {"tv_exact", tv_exact}};
  emit(a.output, [&](std::ostream& os) { os << out.dump(1) << '\n'; });
  return 0;
}

// ---- geodesic -------------------------------------------------------------

struct GeodesicArgs {
  std::string graph;
  bool stats = false;
  long long separate = -1;
  long long center = -1;
  std::vector<double> correspondence;
  long long vertex = -1;
  std::string output;
};

int cmd_geodesic(const GeodesicArgs& a) {
  auto g = lll::load_graph(a.graph);
  auto geo = lll::max_geodesic(g.graph);
  auto dec = lll::project_cells(g.graph, geo);
  const long long length = static_cast<long long>(geo.length());
  const long long center = a.center >= 0 ? a.center : length / 2;
  if (center > length) throw UsageError("--center outside the geodesic (length " + std::to_string(length) + ")");

  nlohmann::json out = {{"family", g.family}, {"params", g.params}, {"decomposition", dec.to_json()}};
  if (a.stats) out["stats"] = lll::cell_statistics(dec, std::size_t(center)).to_json();
  if (a.separate >= 0) {
    if (a.separate > center || center + a.separate > length)
      throw UsageError("--separate window leaves the geodesic");
    auto comps = lll::separation_components(g.graph, dec, std::size_t(a.separate), std::size_t(center));
    out["separation"] = {{"center", center}, {"half_width", a.separate}, {"components", comps}};
  }
  if (!a.correspondence.empty()) {
    const double half = a.correspondence[0], scale = a.correspondence[1];
    if (!(half > 0.0) || !(scale > 0.0)) throw UsageError("--correspondence needs positive A and r");
    lll::Vertex v = a.vertex >= 0 ? lll::Vertex(a.vertex) : geo.vertices[std::size_t(center)];
    if (!g.graph.contains(v)) throw UsageError("--vertex out of range");
    auto corr = lll::segment_correspondence(g.graph, dec, v, half, scale);
    auto j = corr.to_json();
    j["vertex"] = v;
    j["A"] = half;
    j["r"] = scale;
    out["correspondence"] = j;
  }
  emit(a.output, [&](std::ostream& os) { os << out.dump(1) << '\n'; });
  return 0;
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  std::vector<std::string> scans;
  std::string output;
};

int cmd_report(const ReportArgs& a) {
  if (a.scans.empty()) throw lll::FormatError("no scan reports given");
  std::vector<std::string> rows;
  for (const auto& path : a.scans) {
    std::ifstream in(path);
    if (!in) throw lll::FormatError("cannot open " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw lll::FormatError(path + ": " + e.what());
    }
    rows.push_back(lll::report_row(lll::ScanReport::from_json(j)));
  }
  emit(a.output, [&](std::ostream& os) {
    os << lll::kReportColumns << '\n';
    for (const auto& row : rows) os << row << '\n';
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph local-geometry toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a graph from a family");
  generate->add_option("--family", gen.family, "path | cycle | comb | grid | grid_line | torus")->required();
  generate->add_option("--n", gen.n, "Size parameter (path, cycle, comb, grid_line)");
  generate->add_option("--r", gen.r, "Tooth count (comb)");
  generate->add_option("--width", gen.width, "Width (grid, torus)");
  generate->add_option("--height", gen.height, "Height (grid, torus)");
  generate->add_option("-o,--output", gen.output, "Output file (.json for JSON); stdout if omitted");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Bound local GH distance to the line at every vertex");
  scan_cmd->add_option("graph", scan.graph, "Graph file")->required();
  scan_cmd->add_option("--threshold,-x", scan.threshold, "Membership threshold x")->capture_default_str();
  scan_cmd->add_option("--ratio", scan.ratio, "Geometric scale grid ratio")->capture_default_str();
  scan_cmd->add_option("--scale-min", scan.scale_min, "Smallest scale")->capture_default_str();
  scan_cmd->add_option("--scale-max", scan.scale_max, "Largest scale (default 2 * diameter)");
  scan_cmd->add_option("--k-max", scan.k_max, "Number of summands before the tail")->capture_default_str();
  scan_cmd->add_option("--sample", scan.sample, "all | auto | vertex count")->capture_default_str();
  scan_cmd->add_option("--seed", scan.seed, "Sampling seed")->capture_default_str();
  scan_cmd->add_option("--threads", scan.threads, "Worker threads (default $LLL_THREADS or all cores)");
  scan_cmd->add_option("--coordinate", scan.coordinate, "local | geodesic | both")->capture_default_str();
  scan_cmd->add_option("--exact-limit", scan.exact_limit, "Largest ball given exact distortion")
      ->capture_default_str();
  scan_cmd->add_option("-o,--output", scan.output, "Report JSON (stdout if omitted)");
  scan_cmd->add_option("--csv", scan.csv, "Per-vertex, per-scale CSV");

  CensusArgs census;
  auto* census_cmd = app.add_subcommand("census", "Ball-class frequencies and pairwise total variation");
  census_cmd->add_option("graphs", census.graphs, "Graph files")->required();
  census_cmd->add_option("--radius,-r", census.radius, "Ball radius")->required();
  census_cmd->add_option("-o,--output", census.output, "Output JSON (stdout if omitted)");

  GeodesicArgs geo;
  auto* geo_cmd = app.add_subcommand("geodesic", "Maximal geodesic, cells and derived analyses");
  geo_cmd->add_option("graph", geo.graph, "Graph file")->required();
  geo_cmd->add_flag("--stats", geo.stats, "Windowed cell statistics");
  geo_cmd->add_option("--separate", geo.separate, "Delete cells within N of the center");
  geo_cmd->add_option("--center", geo.center, "Geodesic index of the center (default L/2)");
  geo_cmd->add_option("--correspondence", geo.correspondence, "A r: segment correspondence")->expected(2);
  geo_cmd->add_option("--vertex", geo.vertex, "Center vertex for --correspondence (default X_center)");
  geo_cmd->add_option("-o,--output", geo.output, "Output JSON (stdout if omitted)");

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Aggregate scan reports into one CSV");
  report->add_option("scans", rep.scans, "Scan report JSON files");
  report->add_option("-o,--output", rep.output, "Output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*scan_cmd) return cmd_scan(scan);
    if (*census_cmd) return cmd_census(census);
    if (*geo_cmd) return cmd_geodesic(geo);
    if (*report) return cmd_report(rep);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const lll::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
