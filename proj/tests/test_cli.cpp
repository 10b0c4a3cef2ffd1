#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ringcensus/cli.hpp"
#include "ringcensus/report.hpp"

using namespace ringcensus;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ringcensus_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli census") {
  const Run csv = run({"census", "--ring", "2", "--vars", "1", "--degree", "2", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out == "solutions,polynomials\n0,2\n1,4\n2,2\n");

  const Run md = run({"census", "--ring", "3", "--vars", "2", "--degree", "2", "--format", "md"});
  CHECK(md.code == kExitOk);
  CHECK(md.out.find("| 9 | 1 |") != std::string::npos);
  CHECK(md.out.find("| 2 | 216 |") != std::string::npos);

  const Run big = run({"census", "--ring", "17", "--vars", "3", "--degree", "3"});
  CHECK(big.code == kExitBudget);
  CHECK(big.err.find("estimated") != std::string::npos);

  CHECK(run({"census", "--ring", "4", "--vars", "2", "--budget", "10"}).code == kExitBudget);
  CHECK(run({"census", "--ring", "4", "--vars", "2", "--budget", "10", "--force"}).code == kExitOk);
  CHECK(run({"census", "--vars", "2"}).code == kExitUsage);
  CHECK(run({"census", "--ring", "4", "--vars", "2", "--format", "xml"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const fs::path dir = scratch_dir("census");
  const Run file = run({"census", "--ring", "3", "--vars", "2", "--format", "json", "--out", (dir / "s.json").string()});
  CHECK(file.code == kExitOk);
  const Spectrum s = spectrum_from_json(nlohmann::json::parse(slurp(dir / "s.json")));
  CHECK(s.entries.at(9) == 1);

  const Run a = run({"census", "--ring", "4", "--vars", "3", "--format", "csv"});
  const Run b = run({"census", "--ring", "4", "--vars", "3", "--format", "csv", "--workers", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("cli metrics") {
  const Run grid = run({"metrics", "--rings", "2..6", "--vars", "1..3", "--degree", "2", "--metric", "min_divisibility"});
  CHECK(grid.code == kExitOk);
  CHECK(grid.out.find("| 4 | 1 | 2 | 4 |") != std::string::npos);
  CHECK(grid.out.find("| 6 | 1 | 1 | 6 |") != std::string::npos);

  const Run one = run({"metrics", "--rings", "5", "--vars", "2", "--format", "csv", "--metric", "slots_used"});
  CHECK(one.code == kExitOk);
  CHECK(one.out.find("m,n2\n5,") != std::string::npos);

  CHECK(run({"metrics", "--rings", "12", "--vars", "3", "--degree", "3"}).code == kExitBudget);
  CHECK(run({"metrics", "--rings", "3", "--vars", "2", "--metric", "nope"}).code == kExitUsage);

  // Stored spectra are used instead of recomputing.
  const fs::path dir = scratch_dir("metrics");
  run({"census", "--ring", "3", "--vars", "2", "--out", (dir / "spectrum_m3_n2_d2.csv").string()});
  const Run stored = run({"metrics", "--rings", "3", "--vars", "2", "--from-dir", dir.string(), "--no-compute"});
  CHECK(stored.code == kExitOk);
  const Run fresh = run({"metrics", "--rings", "3", "--vars", "2"});
  CHECK(stored.out == fresh.out);
  CHECK(run({"metrics", "--rings", "3", "--vars", "1", "--from-dir", dir.string(), "--no-compute"}).code == kExitUsage);
}

TEST_CASE("cli verify") {
  const Run t2 = run({"verify", "--theorem", "2", "--ring-exp", "2", "--vars", "3", "--samples", "50", "--seed", "4"});
  CHECK(t2.code == kExitOk);
  CHECK(t2.out.find("violations: 0") != std::string::npos);
  CHECK(t2.out == run({"verify", "--theorem", "2", "--ring", "4", "--vars", "3", "--samples", "50", "--seed", "4"}).out);

  const Run t1 = run({"verify", "--theorem", "1", "--ring", "4", "--vars", "2", "--exhaustive"});
  CHECK(t1.code == kExitOk);
  CHECK(t1.out.find("polynomials: 1024") != std::string::npos);

  const Run doubled = run({"verify", "--theorem", "1", "--ring", "4", "--vars", "2", "--exhaustive", "--bound-multiplier", "2",
                           "--max-violations", "3", "--format", "json"});
  CHECK(doubled.code == kExitViolation);
  const auto j = nlohmann::json::parse(doubled.out);
  CHECK(j["violations"].size() == 3);
  CHECK(j["violation_count"].get<u64>() > 3);

  const Run cex = run({"verify", "--theorem", "c1c", "--ring-exp", "2", "--vars", "3", "--samples", "100", "--allow-q-above-v"});
  CHECK(cex.code == kExitViolation);
  CHECK(run({"verify", "--theorem", "c1c", "--ring-exp", "2", "--vars", "3", "--samples", "100"}).code == kExitOk);

  CHECK(run({"verify", "--theorem", "1", "--ring", "4", "--vars", "2"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "2", "--ring", "6", "--vars", "3", "--samples", "5"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "x", "--ring", "4", "--vars", "3", "--samples", "5"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "1", "--ring", "4", "--vars", "2", "--divisor-override", "3", "--samples", "20"}).code ==
        kExitViolation);
}

TEST_CASE("cli probe") {
  const Run ok = run({"probe", "--ring", "4", "--vars", "3", "--degree", "2", "--divisor", "4", "--tries", "30"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.empty());
  const Run bad = run({"probe", "--ring", "4", "--vars", "3", "--degree", "2", "--divisor", "64", "--tries", "3", "--verbose"});
  CHECK(bad.code == kExitViolation);
  CHECK(bad.out.rfind("remainder: ", 0) == 0);
  CHECK(bad.out.find("poly mod 4") != std::string::npos);
}

TEST_CASE("cli bound, image, intersect, expsum") {
  CHECK(run({"bound", "--marshall-ramage", "--ring", "16", "--vars", "3", "--degree", "2"}).out == "32\n");
  CHECK(run({"bound", "--ax", "--prime", "3", "--exp", "1", "--vars", "5"}).out == "9\n");
  CHECK(run({"bound", "--theorem1", "--ring", "12", "--vars", "2", "--q", "1,1"}).out == "12\n");
  CHECK(run({"bound", "--theorem2", "--exp", "2", "--vars", "3", "--q", "1", "--v", "1"}).out == "8\n");
  CHECK(run({"bound", "--corollary", "c", "--ring", "8", "--vars", "3", "--q", "2", "--v", "3"}).out == "16\n");
  CHECK(run({"bound", "--vars", "3"}).code == kExitUsage);
  CHECK(run({"bound", "--theorem1", "--ring", "4", "--vars", "2", "--q", "3"}).code == kExitUsage);
  const Run explained = run({"bound", "--marshall-ramage", "--ring", "12", "--vars", "3", "--explain"});
  CHECK(explained.out.find("2^(ceil(2*3/2)-1=2) * 3^(ceil(3/2)-1=1) = 12") != std::string::npos);

  const Run img = run({"image", "--ring-exp", "4", "--a", "1", "--b", "1", "--check"});
  CHECK(img.code == kExitOk);
  CHECK(img.out == "2 x {0 + 2*i : i < 8}\ntotal: 16\nenumeration: match\n");
  const Run rimg = run({"image", "--ring-exp", "3", "--a", "1", "--c", "1", "--l", "1", "--v", "1", "--format", "json"});
  const auto j = nlohmann::json::parse(rimg.out);
  CHECK(j["slices"][0]["offset"] == 2);
  CHECK(j["slices"][0]["multiplicity"] == 2);

  const Run inter = run({"intersect", "--ring-exp", "2", "--p", "1,0,0,0,2", "--q", "1,0,0,0,2"});
  CHECK(inter.out == "count: 8\ndivisor: 4\ndivides: yes\n");
  CHECK(run({"intersect", "--ring-exp", "4", "--p", "1,0,0,0,4", "--s-e", "1", "--s-v", "2"}).code == kExitOk);
  CHECK(run({"intersect", "--ring-exp", "4", "--p", "1,0,0,0,4"}).code == kExitUsage);
  CHECK(run({"intersect", "--ring-exp", "4", "--p", "1,0,0"}).code == kExitUsage);

  const Run es = run({"expsum", "--poly", "poly mod 4: x1 + x2", "--normalizer", "4"});
  CHECK(es.code == kExitOk);
  CHECK(es.out == "domain: cube\ncounts: 1 2 1 0\nsum: 0.000000000 + 2.000000000i\namplitude: 0.000000000 + 0.500000000i\n");
  CHECK(run({"expsum", "--poly", "poly mod 2: x1", "--full"}).out.find("counts: 1 1") != std::string::npos);
  CHECK(run({"expsum", "--poly", "garbage"}).code == kExitUsage);
}

TEST_CASE("ranges and campaign config") {
  CHECK(parse_range("2..4") == std::vector<u64>{2, 3, 4});
  CHECK(parse_range("2,5, 7") == std::vector<u64>{2, 5, 7});
  CHECK(parse_range("1..2,6") == std::vector<u64>{1, 2, 6});
  CHECK_THROWS_AS(parse_range("4..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range(""), std::invalid_argument);

  const CampaignConfig cfg = CampaignConfig::parse(
      "# demo\nrings = 2..3\nvars = 1..2\ndegree = 2\ncells = 4:3:2\nworkers = 2\nformats = csv, json\nforce = 4:3:2\n");
  CHECK(cfg.cells.size() == 5);
  CHECK(cfg.workers == 2);
  CHECK(cfg.formats == std::vector<std::string>{"csv", "json"});
  CHECK(cfg.is_forced(Cell{4, 3, 2}));
  CHECK_FALSE(cfg.is_forced(Cell{2, 1, 2}));
  CHECK_THROWS_WITH_AS(CampaignConfig::parse("rings = 2\nbogus = 1\n"), "config line 2: unknown key 'bogus'", std::invalid_argument);
  CHECK_THROWS_AS(CampaignConfig::parse("rings = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(CampaignConfig::parse("# nothing\n"), std::invalid_argument);
  CHECK_THROWS_AS(CampaignConfig::parse("cells = 4:3\n"), std::invalid_argument);
}

TEST_CASE("cli campaign") {
  const fs::path dir = scratch_dir("campaign");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "rings = 2..3\nvars = 1..2\ndegree = 2\nformats = csv, md, json\nseed = 7\nverify_samples = 20\noutput = "
        << (dir / "out").string() << "\n";
  }
  const Run r1 = run({"campaign", "--config", (dir / "run.cfg").string()});
  CHECK(r1.code == kExitOk);
  CHECK(fs::exists(dir / "out" / "spectrum_m3_n2_d2.csv"));
  CHECK(fs::exists(dir / "out" / "spectrum_m2_n1_d2.md"));
  CHECK(fs::exists(dir / "out" / "metrics_d2.md"));
  const std::string summary1 = slurp(dir / "out" / "summary.json");
  CHECK(nlohmann::json::parse(summary1)["cells"].size() == 4);

  // Reruns are byte-identical.
  const Run r2 = run({"campaign", "--config", (dir / "run.cfg").string(), "--output", (dir / "again").string()});
  CHECK(r2.code == kExitOk);
  CHECK(slurp(dir / "again" / "summary.json") == summary1);
  CHECK(slurp(dir / "again" / "metrics_d2.csv") == slurp(dir / "out" / "metrics_d2.csv"));

  {
    std::ofstream cfg(dir / "big.cfg");
    cfg << "cells = 2:2:2, 17:3:3\noutput = " << (dir / "big").string() << "\n";
  }
  const Run refused = run({"campaign", "--config", (dir / "big.cfg").string()});
  CHECK(refused.code == kExitBudget);
  CHECK_FALSE(fs::exists(dir / "big"));
  CHECK(run({"campaign", "--config", (dir / "missing.cfg").string()}).code == kExitUsage);
}
