#include <doctest.h>

#include "ringcensus/report.hpp"

using namespace ringcensus;

TEST_CASE("spectrum csv") {
  const Spectrum s = run_census({2, 1, 2});
  CHECK(spectrum_to_csv(s) == "solutions,polynomials\n0,2\n1,4\n2,2\n");
  CHECK(spectrum_from_csv(spectrum_to_csv(s), s.cell) == s);

  CHECK_THROWS_AS(spectrum_from_csv("count,polys\n0,1\n", s.cell), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_csv("solutions,polynomials\n0;1\n", s.cell), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_csv("solutions,polynomials\n2,1\n1,1\n", s.cell), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_csv("solutions,polynomials\n1,-3\n", s.cell), std::invalid_argument);
}

TEST_CASE("spectrum markdown") {
  const Spectrum s = run_census({3, 2, 2});
  CHECK(spectrum_to_markdown(s) ==
        "| m=3 n=2 d=2 | |\n|---:|---:|\n| 0 | 26 |\n| 1 | 54 |\n| 2 | 216 |\n| 3 | 192 |\n| 4 | 108 |\n"
        "| 5 | 108 |\n| 6 | 24 |\n| 9 | 1 |\n");
}

TEST_CASE("round trips keep metrics identical") {
  for (const Cell cell : {Cell{3, 2, 2}, Cell{4, 3, 2}, Cell{2, 3, 3}, Cell{6, 2, 2}}) {
    const Spectrum s = run_census(cell);
    const MetricsReport r = derive_metrics(s);
    CHECK(derive_metrics(spectrum_from_csv(spectrum_to_csv(s), cell)) == r);
    CHECK(derive_metrics(spectrum_from_json(nlohmann::json::parse(spectrum_to_json(s).dump()))) == r);
  }
}

TEST_CASE("128-bit counts in json") {
  Spectrum s{{17, 3, 3}, {}};
  const u128 big = (u128{1} << 100) + 7;
  s.entries[4913] = big;
  s.entries[0] = 5;
  const auto j = spectrum_to_json(s);
  CHECK(j["entries"][1]["polynomials"].is_string());
  CHECK(j["entries"][0]["polynomials"].is_number());
  CHECK(spectrum_from_json(j) == s);
  CHECK(spectrum_from_csv(spectrum_to_csv(s), s.cell) == s);
  CHECK(to_string_u128(big) == "1267650600228229401496703205383");
  CHECK_THROWS_AS(spectrum_from_json(nlohmann::json::parse(R"({"cell":{"m":1,"n":1,"d":1},"entries":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json(nlohmann::json::parse(R"({"entries":[]})")), std::invalid_argument);
}

TEST_CASE("metrics json and grids") {
  std::vector<MetricsReport> reports;
  for (u64 m = 2; m <= 3; ++m)
    for (int n = 1; n <= 2; ++n) reports.push_back(derive_metrics(run_census({m, n, 2})));
  const auto j = metrics_to_json(reports[3]);
  CHECK(j["min_divisibility"] == 1);
  CHECK(j["pct_slots_used"]["percent"] == "80.0");
  CHECK(j["last_gap"] == 3);

  CHECK(metrics_grid_markdown(reports, Metric::PctSlotsUsed) ==
        "**Percent of slots allowed by minimum divisibility that are used** (degree 2)\n\n"
        "| m \\ n | 1 | 2 |\n|---|---:|---:|\n| 2 | 100.0% | 100.0% |\n| 3 | 100.0% | 80.0% |\n");
  CHECK(metrics_grid_csv(reports, Metric::LastGap) == "m,n1,n2\n2,1,1\n3,1,3\n");
  CHECK(metrics_grid_json(reports).size() == 4);

  MetricsReport lone = derive_metrics(Spectrum{{3, 1, 1}, {{3, 9}}});
  CHECK(metric_value(lone, Metric::LastGap) == "undefined");
  CHECK(metrics_to_json(lone)["last_gap"] == "undefined");
}
