#include <doctest.h>

#include <sstream>

#include "lll/scan.hpp"

using namespace lll;

namespace {

ScanOptions quick() {
  ScanOptions o;
  o.scale_max = 8.0;
  o.gh.k_max = 8;
  return o;
}

}  // namespace

TEST_CASE("scan report invariants") {
  auto g = labeled(FamilySpec{Family::comb, 20, 4});
  auto r = run_scan(g, quick());
  CHECK(r.family == "comb");
  CHECK(r.vertex_count == g.graph.vertex_count());
  CHECK(r.records.size() == r.vertex_count);
  CHECK_FALSE(r.sampled);
  CHECK(r.c() == doctest::Approx(double(r.vertex_count) / double(r.diameter)));
  CHECK(r.scales == geometric_scales(1, 8, std::sqrt(2.0)));
  std::size_t in_a = 0;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    CHECK(rec.vertex == i);
    CHECK(rec.bounds.size() == r.scales.size());
    CHECK(rec.in_a == (rec.min_upper < r.threshold));
    for (const auto& b : rec.bounds) CHECK(b.summands.empty());
    in_a += rec.in_a;
  }
  CHECK(r.in_a_count() == in_a);
  CHECK(r.fraction() == doctest::Approx(double(in_a) / double(r.vertex_count)));
}

TEST_CASE("default scale range reaches twice the diameter") {
  auto g = labeled(FamilySpec{Family::path, 8});
  ScanOptions o;
  o.gh.k_max = 6;
  auto r = run_scan(g, o);
  CHECK(r.scales.front() == 1.0);
  CHECK(r.scales.back() == 16.0);
}

TEST_CASE("thresholding is monotone") {
  auto r = run_scan(labeled(FamilySpec{Family::grid_line, 4}), quick());
  double last = -1.0;
  for (double x : {0.05, 0.1, 0.2, 0.4, 0.8, 2.0}) {
    auto t = r.with_threshold(x);
    CHECK(t.fraction() >= last);
    last = t.fraction();
    if (auto m = t.min_upper_in_a()) CHECK(*m < x);
  }
  CHECK_FALSE(r.with_threshold(1e-9).min_upper_in_a().has_value());
}

TEST_CASE("scans are deterministic across thread counts") {
  auto g = labeled(FamilySpec{Family::comb, 16, 4});
  auto o = quick();
  auto one = run_scan(g, o);
  o.threads = 3;
  auto three = run_scan(g, o);
  CHECK(one.to_json() == three.to_json());
}

TEST_CASE("sampling is seeded") {
  auto g = labeled(FamilySpec{Family::cycle, 50});
  auto o = quick();
  o.sample = 10;
  auto a = run_scan(g, o), b = run_scan(g, o);
  CHECK(a.sampled);
  CHECK(a.records.size() == 10);
  CHECK(a.to_json() == b.to_json());
  o.seed = 2;
  auto c = run_scan(g, o);
  std::vector<Vertex> va, vc;
  for (auto& rec : a.records) va.push_back(rec.vertex);
  for (auto& rec : c.records) vc.push_back(rec.vertex);
  CHECK(va != vc);
  CHECK(std::is_sorted(va.begin(), va.end()));
  CHECK(a.fraction() == doctest::Approx(double(a.in_a_count()) / 10.0));
}

TEST_CASE("json round trip and schema errors") {
  auto r = run_scan(labeled(FamilySpec{Family::path, 6}), quick());
  auto j = r.to_json();
  auto back = ScanReport::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(j["summary"]["evaluated"] == r.records.size());

  auto missing = j;
  missing.erase("threshold");
  CHECK_THROWS_AS(ScanReport::from_json(missing), FormatError);
  auto wrong = j;
  wrong["summary"]["fraction"] = 0.123456;
  CHECK_THROWS_AS(ScanReport::from_json(wrong), FormatError);
  auto flipped = j;
  flipped["records"][0]["in_A"] = !flipped["records"][0]["in_A"].get<bool>();
  CHECK_THROWS_AS(ScanReport::from_json(flipped), FormatError);
  CHECK_THROWS_AS(ScanReport::from_json(nlohmann::json::array()), FormatError);
}

TEST_CASE("csv and report rows") {
  auto r = run_scan(labeled(FamilySpec{Family::path, 5}), quick());
  std::ostringstream out;
  r.write_csv(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "vertex,scale,lower,upper,k_max,tail,min_upper,in_A");
  std::size_t rows = 0;
  while (std::getline(in, line)) rows += !line.empty();
  CHECK(rows == r.records.size() * r.scales.size());

  auto row = report_row(r);
  CHECK(std::count(row.begin(), row.end(), ',') ==
        std::count(kReportColumns, kReportColumns + std::strlen(kReportColumns), ','));
  CHECK(row.rfind("path,5,6,5,", 0) == 0);
}

TEST_CASE("invalid thresholds are rejected") {
  auto o = quick();
  o.threshold = 0.0;
  CHECK_THROWS_AS(run_scan(labeled(FamilySpec{Family::path, 5}), o), std::invalid_argument);
}
