#include "ringcensus/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ringcensus/bounds.hpp"
#include "ringcensus/expsum.hpp"
#include "ringcensus/image_multiset.hpp"
#include "ringcensus/report.hpp"
#include "ringcensus/theorem_check.hpp"

namespace ringcensus {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

u64 parse_u64(const std::string& s) {
  const u128 v = parse_u128(trim(s));
  if (v > static_cast<u128>(~u64{0})) throw std::invalid_argument("value out of range: " + s);
  return static_cast<u64>(v);
}

Cell parse_cell(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw std::invalid_argument("cell must be m:n:d, got '" + s + "'");
  Cell c{parse_u64(parts[0]), static_cast<int>(parse_u64(parts[1])), static_cast<int>(parse_u64(parts[2]))};
  c.validate();
  return c;
}

std::string spectrum_file(const Cell& c, const std::string& ext) {
  return "spectrum_m" + std::to_string(c.m) + "_n" + std::to_string(c.n) + "_d" + std::to_string(c.d) + "." + ext;
}

std::string render_spectrum(const Spectrum& s, const std::string& format) {
  if (format == "csv") return spectrum_to_csv(s);
  if (format == "md") return spectrum_to_markdown(s);
  return spectrum_to_json(s).dump(2) + "\n";
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fmt_complex(std::complex<double> z) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(9) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return o.str();
}

int log2_exact(u64 m) {
  if (m < 2 || (m & (m - 1)) != 0) throw std::invalid_argument("ring must be a power of two");
  int r = 0;
  while ((u64{1} << r) < m) ++r;
  return r;
}

Metric parse_metric(const std::string& key) {
  for (Metric m : kAllMetrics)
    if (metric_key(m) == key) return m;
  throw std::invalid_argument("unknown metric '" + key + "'");
}

// ---- subcommands ------------------------------------------------------------

struct CensusArgs {
  u64 ring = 0;
  int vars = 0, degree = 2;
  unsigned workers = 1;
  std::string format = "csv";
  std::string out_path;
  bool force = false;
  u64 budget = default_budget();
};

int cmd_census(const CensusArgs& a, std::ostream& out) {
  const Cell cell{a.ring, a.vars, a.degree};
  cell.validate();
  const Spectrum s = run_census(cell, {a.workers, a.budget, a.force});
  const std::string text = render_spectrum(s, a.format);
  if (a.out_path.empty()) {
    out << text;
  } else {
    write_file(a.out_path, text);
    out << cell.label() << ": " << s.entries.size() << " distinct counts over " << to_string_u128(s.total_polynomials())
        << " polynomials -> " << a.out_path << "\n";
  }
  return kExitOk;
}

struct MetricsArgs {
  std::string rings, vars;
  int degree = 2;
  std::string metric = "all";
  std::string format = "md";
  std::string from_dir;
  bool no_compute = false;
  bool force = false;
  unsigned workers = 1;
  u64 budget = default_budget();
};

std::optional<Spectrum> load_spectrum(const fs::path& dir, const Cell& cell) {
  if (auto text = read_file(dir / spectrum_file(cell, "csv"))) return spectrum_from_csv(*text, cell);
  if (auto text = read_file(dir / spectrum_file(cell, "json"))) {
    Spectrum s = spectrum_from_json(nlohmann::json::parse(*text));
    if (!(s.cell == cell)) throw std::invalid_argument("spectrum file does not match cell " + cell.label());
    return s;
  }
  return std::nullopt;
}

std::string render_grids(const std::vector<MetricsReport>& reports, const std::string& metric, const std::string& format) {
  if (format == "json") return metrics_grid_json(reports).dump(2) + "\n";
  std::vector<Metric> which;
  if (metric == "all") which.assign(std::begin(kAllMetrics), std::end(kAllMetrics));
  else which.push_back(parse_metric(metric));
  std::string text;
  for (Metric m : which) {
    if (!text.empty()) text += "\n";
    text += format == "csv" ? "# " + metric_title(m) + "\n" + metrics_grid_csv(reports, m) : metrics_grid_markdown(reports, m);
  }
  return text;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  if (a.metric != "all") parse_metric(a.metric);
  std::vector<MetricsReport> reports;
  for (u64 m : parse_range(a.rings))
    for (u64 n : parse_range(a.vars)) {
      const Cell cell{m, static_cast<int>(n), a.degree};
      cell.validate();
      std::optional<Spectrum> s;
      if (!a.from_dir.empty()) s = load_spectrum(a.from_dir, cell);
      if (!s) {
        if (a.no_compute) throw UsageError("no stored spectrum for " + cell.label() + " and --no-compute is set");
        s = run_census(cell, {a.workers, a.budget, a.force});
      }
      reports.push_back(derive_metrics(*s));
    }
  out << render_grids(reports, a.metric, a.format);
  return kExitOk;
}

struct VerifyArgs {
  std::string theorem;
  u64 ring = 0;
  int ring_exp = 0;
  int vars = 0, degree = 2;
  bool exhaustive = false;
  u64 samples = 0, seed = 1;
  u64 divisor_override = 0;
  u64 multiplier = 1;
  unsigned workers = 1;
  std::size_t max_violations = 20;
  bool stop_at_first = false, allow_q_above_v = false;
  std::string format = "text";
  u64 budget = default_budget();
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const TheoremKind kind = parse_theorem_kind(a.theorem);
  if (a.exhaustive == (a.samples > 0)) throw UsageError("choose exactly one of --exhaustive and --samples N");
  const Sweep sweep = a.exhaustive ? Sweep::exhaustive() : Sweep::sampled(a.seed, a.samples);
  CheckOptions opt;
  opt.bound_multiplier = a.multiplier;
  if (a.divisor_override) opt.divisor_override = a.divisor_override;
  opt.workers = a.workers;
  opt.budget = a.budget;
  opt.max_recorded = a.max_violations;
  opt.stop_at_first = a.stop_at_first;
  opt.allow_q_above_v = a.allow_q_above_v;

  CheckReport rep;
  if (kind == TheoremKind::Theorem1) {
    if (!a.ring) throw UsageError("theorem 1 needs --ring");
    rep = verify_theorem1(a.ring, a.vars, a.degree, sweep, opt);
  } else {
    if (a.degree != 2) throw UsageError("theorem 2 and its corollary cover degree 2 only");
    int r = a.ring_exp;
    if (a.ring) {
      const int from_ring = log2_exact(a.ring);
      if (r && r != from_ring) throw UsageError("--ring and --ring-exp disagree");
      r = from_ring;
    }
    if (!r) throw UsageError("theorem 2 needs --ring-exp or a power-of-two --ring");
    if (kind == TheoremKind::Theorem2) rep = verify_theorem2(r, a.vars, sweep, opt);
    else {
      const auto v = kind == TheoremKind::Corollary1a   ? Corollary1Variant::A
                     : kind == TheoremKind::Corollary1b ? Corollary1Variant::B
                                                        : Corollary1Variant::C;
      rep = verify_corollary1(v, r, a.vars, sweep, opt);
    }
  }

  if (a.format == "json") {
    nlohmann::json j{{"theorem", to_string(rep.which)},
                     {"mode", a.exhaustive ? "exhaustive" : "sampled"},
                     {"polynomials", rep.polynomials},
                     {"instances", rep.instances},
                     {"lhs_total", u128_to_json(rep.lhs_total)},
                     {"bound", rep.bound_description},
                     {"violation_count", rep.violation_count}};
    if (rep.seed) j["seed"] = *rep.seed;
    j["violations"] = nlohmann::json::array();
    for (const Violation& v : rep.violations)
      j["violations"].push_back(
          {{"poly", to_string(v.poly)}, {"params", v.params}, {"lhs", u128_to_json(v.lhs)}, {"bound", v.bound}});
    out << j.dump(2) << "\n";
  } else {
    out << "theorem: " << to_string(rep.which) << "\n";
    out << "mode: " << (a.exhaustive ? "exhaustive" : "sampled (seed " + std::to_string(a.seed) + ")") << "\n";
    out << "polynomials: " << rep.polynomials << "\n";
    out << "instances: " << rep.instances << "\n";
    out << "lhs total: " << to_string_u128(rep.lhs_total) << "\n";
    out << "bound: " << rep.bound_description << "\n";
    out << "violations: " << rep.violation_count << "\n";
    for (const Violation& v : rep.violations)
      out << "violation: " << to_string(v.poly) << " | " << v.params << " | lhs " << to_string_u128(v.lhs) << " | bound "
          << v.bound << "\n";
  }
  return rep.passed() ? kExitOk : kExitViolation;
}

struct ProbeArgs {
  u64 ring = 0;
  int vars = 0, degree = 3;
  u64 divisor = 0, tries = 0, seed = 1;
  bool stop_at_first = false, verbose = false;
  u64 budget = default_budget();
};

int cmd_probe(const ProbeArgs& a, std::ostream& out) {
  const Cell cell{a.ring, a.vars, a.degree};
  cell.validate();
  ProbeOptions opt;
  opt.stop_at_first = a.stop_at_first;
  opt.budget = a.budget;
  const auto found = random_divisibility_probe(cell, a.divisor, a.tries, a.seed, opt);
  for (const ProbeRemainder& p : found) {
    out << "remainder: " << p.remainder << "\n";
    if (a.verbose)
      out << "  try " << p.try_index << ", value " << p.residue << ", count " << p.count << ", " << to_string(p.poly) << "\n";
  }
  return found.empty() ? kExitOk : kExitViolation;
}

struct ImageArgs {
  int r = 0;
  u64 a = 0, b = 0, c = 0, l = 0;
  int v = -1;
  bool check = false;
  std::string format = "text";
};

int cmd_image(const ImageArgs& a, std::ostream& out) {
  const int v = a.v < 0 ? a.r : a.v;
  const SliceMultiset s = a.v < 0 ? image_quadratic(a.a, a.b, a.c, a.r) : image_quadratic_restricted(a.a, a.b, a.c, a.r, a.l, v);
  bool matches = true;
  if (a.check) matches = s.expand() == image_by_enumeration(a.a, a.b, a.c, a.r, a.l, v);
  if (a.format == "json") {
    nlohmann::json j{{"r", a.r}, {"total", u128_to_json(s.total())}};
    j["slices"] = nlohmann::json::array();
    for (const Slice& sl : s.slices())
      j["slices"].push_back({{"offset", sl.offset}, {"period", sl.period}, {"multiplicity", sl.multiplicity}});
    if (a.check) j["matches_enumeration"] = matches;
    out << j.dump(2) << "\n";
  } else {
    for (const Slice& sl : s.slices())
      out << sl.multiplicity << " x {" << sl.offset << " + " << sl.period << "*i : i < " << (s.modulus() / sl.period) << "}\n";
    out << "total: " << to_string_u128(s.total()) << "\n";
    if (a.check) out << "enumeration: " << (matches ? "match" : "MISMATCH") << "\n";
  }
  return matches ? kExitOk : kExitViolation;
}

DomainQuad parse_domain_quad(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 5) throw UsageError("quadratic must be a,b,c,l,v, got '" + s + "'");
  return {parse_u64(parts[0]), parse_u64(parts[1]), parse_u64(parts[2]), parse_u64(parts[3]),
          static_cast<int>(parse_u64(parts[4]))};
}

struct IntersectArgs {
  int r = 0;
  std::string p, q;
  int d = 0;
  int e = -1, v = -1;
};

int cmd_intersect(const IntersectArgs& a, std::ostream& out) {
  const DomainQuad p = parse_domain_quad(a.p);
  IntersectionResult res;
  if (!a.q.empty()) {
    if (a.e >= 0 || a.v >= 0) throw UsageError("--q cannot be combined with --s-e/--s-v");
    res = intersection_size(p, parse_domain_quad(a.q), a.d, a.r);
  } else {
    if (a.e < 0 || a.v < 0) throw UsageError("give either --q or both --s-e and --s-v");
    res = intersection_with_S(p, a.e, a.v, a.r);
  }
  out << "count: " << to_string_u128(res.count) << "\n";
  out << "divisor: " << res.divisor << "\n";
  out << "divides: " << (res.divides() ? "yes" : "no") << "\n";
  return res.divides() ? kExitOk : kExitViolation;
}

struct ExpsumArgs {
  std::string poly;
  bool full = false;
  double normalizer = 0;
  u64 budget = default_budget();
};

int cmd_expsum(const ExpsumArgs& a, std::ostream& out) {
  const Poly q = parse_poly(a.poly);
  std::vector<u64> counts = a.full ? value_histogram(q, a.budget).counts : boolean_fiber_counts(q, a.budget);
  const auto weighted = weighted_sum(counts);
  const auto direct = exponential_sum(q, !a.full, a.budget);
  if (std::abs(weighted - direct) > kSumTolerance) throw std::logic_error("summation paths disagree");
  out << "domain: " << (a.full ? "full" : "cube") << "\n";
  out << "counts:";
  for (u64 c : counts) out << " " << c;
  out << "\nsum: " << fmt_complex(weighted) << "\n";
  if (a.normalizer > 0) out << "amplitude: " << fmt_complex(weighted / a.normalizer) << "\n";
  return kExitOk;
}

struct BoundArgs {
  bool ax = false, mr = false, t1 = false, t2 = false;
  std::string corollary;
  u64 ring = 0, prime = 0;
  int exp = 0, vars = 0, degree = 2;
  std::string q;
  int v = 0;
  bool explain = false;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const int chosen = a.ax + a.mr + a.t1 + a.t2 + !a.corollary.empty();
  if (chosen != 1) throw UsageError("choose exactly one bound");
  DivisibilityBound b;
  if (a.ax) {
    if (!a.prime || !a.exp) throw UsageError("--ax needs --prime and --exp");
    b = ax_bound(a.prime, a.exp, a.vars, a.degree);
  } else if (a.mr) {
    if (!a.ring) throw UsageError("--marshall-ramage needs --ring");
    b = marshall_ramage_bound(RingSpec(a.ring), a.vars, a.degree);
  } else if (a.t1) {
    if (!a.ring) throw UsageError("--theorem1 needs --ring");
    const RingSpec ring(a.ring);
    std::vector<int> q;
    if (a.q.empty()) q.assign(ring.factorization().size(), 0);
    else
      for (const auto& part : split(a.q, ',')) q.push_back(static_cast<int>(parse_u64(part)));
    b = theorem1_bound(ring, a.vars, a.degree, q);
  } else {
    int r = a.exp;
    if (a.ring) r = log2_exact(a.ring);
    if (!r) throw UsageError("needs --ring (a power of two) or --exp");
    const int q = a.q.empty() ? 0 : static_cast<int>(parse_u64(a.q));
    if (a.t2) {
      b = theorem2_bound(r, a.vars, q, a.v);
    } else {
      const Corollary1Variant variant = a.corollary == "a"   ? Corollary1Variant::A
                                        : a.corollary == "b" ? Corollary1Variant::B
                                        : a.corollary == "c" ? Corollary1Variant::C
                                                             : throw UsageError("--corollary takes a, b or c");
      b = corollary1_bound(variant, r, a.vars, q, a.v);
    }
  }
  out << b.value << "\n";
  if (a.explain) {
    out << to_string(b.provenance) << ": " << b.formula << "\n";
    for (const auto& [k, v] : b.params) out << "  " << k << " = " << v << "\n";
  }
  return kExitOk;
}

struct CampaignArgs {
  std::string config;
  std::string output;
  bool dry_run = false;
};

int cmd_campaign(const CampaignArgs& a, std::ostream& out, std::ostream& err) {
  const auto text = read_file(a.config);
  if (!text) throw UsageError("cannot read config " + a.config);
  CampaignConfig cfg = CampaignConfig::parse(*text);
  if (!a.output.empty()) cfg.output_dir = a.output;
  if (cfg.budget == 0) cfg.budget = default_budget();

  // Every estimate up front; nothing runs if a cell is refused.
  bool refused = false;
  for (const Cell& c : cfg.cells) {
    const long double cost = census_cost(c);
    const bool over = cost > static_cast<long double>(cfg.budget);
    out << c.label() << " estimated " << format_estimate(cost) << " evaluations" << (over ? (cfg.is_forced(c) ? " (forced)" : " (over budget)") : "")
        << "\n";
    if (over && !cfg.is_forced(c)) refused = true;
  }
  if (refused) {
    err << "campaign refused: cells over budget " << cfg.budget << " need a force entry\n";
    return kExitBudget;
  }
  if (a.dry_run) return kExitOk;

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  std::map<int, std::vector<MetricsReport>> by_degree;
  nlohmann::json summary{{"cells", nlohmann::json::array()}};
  for (const Cell& c : cfg.cells) {
    const Spectrum s = run_census(c, {cfg.workers, cfg.budget, cfg.is_forced(c)});
    for (const auto& f : cfg.formats) write_file(dir / spectrum_file(c, f), render_spectrum(s, f));
    const MetricsReport m = derive_metrics(s);
    by_degree[c.d].push_back(m);
    nlohmann::json entry = metrics_to_json(m);
    if (cfg.verify_samples > 0 && c.n >= 2) {
      CheckOptions opt;
      opt.workers = cfg.workers;
      opt.budget = cfg.budget;
      const CheckReport rep = verify_theorem1(c.m, c.n, c.d, Sweep::sampled(cfg.seed, cfg.verify_samples), opt);
      entry["theorem1_sampled"] = {{"seed", cfg.seed},
                                   {"polynomials", rep.polynomials},
                                   {"instances", rep.instances},
                                   {"lhs_total", u128_to_json(rep.lhs_total)},
                                   {"violations", rep.violation_count}};
      if (!rep.passed()) refused = true;
    }
    summary["cells"].push_back(entry);
    out << c.label() << " done: " << s.entries.size() << " distinct counts\n";
  }
  for (const auto& [d, reports] : by_degree)
    for (const auto& f : cfg.formats) {
      const std::string ext = f == "md" ? "md" : f == "json" ? "json" : "csv";
      write_file(dir / ("metrics_d" + std::to_string(d) + "." + ext), render_grids(reports, "all", f));
    }
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  out << "wrote " << cfg.cells.size() << " cells to " << dir.string() << "\n";
  return refused ? kExitViolation : kExitOk;
}

void add_budget(CLI::App* sub, u64& budget) {
  sub->add_option("--budget", budget, "work budget in point evaluations (default from RINGCENSUS_BUDGET or 1e10)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

std::vector<u64> parse_range(const std::string& text) {
  std::vector<u64> out;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_u64(part));
      continue;
    }
    const u64 lo = parse_u64(part.substr(0, dots)), hi = parse_u64(part.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty range '" + part + "'");
    if (hi - lo > 100000) throw std::invalid_argument("range too long '" + part + "'");
    for (u64 x = lo; x <= hi; ++x) out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

CampaignConfig CampaignConfig::parse(const std::string& text) {
  CampaignConfig cfg;
  std::optional<std::string> rings, vars, degree;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key = value");
      const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
      if (key == "rings") rings = value;
      else if (key == "vars") vars = value;
      else if (key == "degree") degree = value;
      else if (key == "cells")
        for (const auto& c : split(value, ',')) cfg.cells.push_back(parse_cell(c));
      else if (key == "workers") cfg.workers = static_cast<unsigned>(std::max<u64>(1, parse_u64(value)));
      else if (key == "budget") cfg.budget = parse_u64(value);
      else if (key == "output") cfg.output_dir = value;
      else if (key == "formats") {
        cfg.formats = split(value, ',');
        for (const auto& f : cfg.formats)
          if (f != "csv" && f != "md" && f != "json") throw std::invalid_argument("unknown format '" + f + "'");
      } else if (key == "seed") cfg.seed = parse_u64(value);
      else if (key == "verify_samples") cfg.verify_samples = parse_u64(value);
      else if (key == "force")
        for (const auto& c : split(value, ',')) cfg.forced.push_back(parse_cell(c));
      else throw std::invalid_argument("unknown key '" + key + "'");
    }
    if (rings || vars || degree) {
      if (!rings || !vars) throw std::invalid_argument("rings and vars must be given together");
      for (u64 d : parse_range(degree.value_or("2")))
        for (u64 m : parse_range(*rings))
          for (u64 n : parse_range(*vars)) {
            Cell c{m, static_cast<int>(n), static_cast<int>(d)};
            c.validate();
            cfg.cells.push_back(c);
          }
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
  }
  if (cfg.cells.empty()) throw std::invalid_argument("config lists no cells");
  return cfg;
}

bool CampaignConfig::is_forced(const Cell& c) const {
  return std::find(forced.begin(), forced.end(), c) != forced.end();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solution-count census and divisibility checks for polynomials over Z_m", "ringcensus"};
  app.require_subcommand(1);

  CensusArgs census;
  auto* c = app.add_subcommand("census", "full spectrum of one (m, n, d) cell");
  c->add_option("--ring", census.ring, "modulus m")->required()->check(CLI::Range(u64{2}, u64{1} << 31));
  c->add_option("--vars", census.vars, "number of variables")->required()->check(CLI::Range(1, 32));
  c->add_option("--degree", census.degree, "degree bound")->check(CLI::Range(1, 3));
  c->add_option("--workers", census.workers)->check(CLI::Range(1u, 256u));
  c->add_option("--format", census.format)->check(CLI::IsMember({"csv", "md", "json"}));
  c->add_option("--out", census.out_path, "write the spectrum here instead of stdout");
  c->add_flag("--force", census.force, "run even above the budget");
  add_budget(c, census.budget);

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "metric grids over a range of cells");
  m->add_option("--rings", metrics.rings, "e.g. 2..8")->required();
  m->add_option("--vars", metrics.vars, "e.g. 1..3")->required();
  m->add_option("--degree", metrics.degree)->check(CLI::Range(1, 3));
  m->add_option("--metric", metrics.metric, "all or one metric key");
  m->add_option("--format", metrics.format)->check(CLI::IsMember({"csv", "md", "json"}));
  m->add_option("--from-dir", metrics.from_dir, "read stored spectra from this directory");
  m->add_flag("--no-compute", metrics.no_compute, "fail instead of computing missing spectra");
  m->add_flag("--force", metrics.force);
  m->add_option("--workers", metrics.workers)->check(CLI::Range(1u, 256u));
  add_budget(m, metrics.budget);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check a divisibility theorem over many polynomials");
  v->add_option("--theorem", verify.theorem, "1, 2, c1a, c1b or c1c")->required();
  v->add_option("--ring", verify.ring)->check(CLI::Range(u64{2}, u64{1} << 31));
  v->add_option("--ring-exp", verify.ring_exp, "r for Z_{2^r}")->check(CLI::Range(1, 30));
  v->add_option("--vars", verify.vars)->required()->check(CLI::Range(1, 32));
  v->add_option("--degree", verify.degree)->check(CLI::Range(1, 3));
  v->add_flag("--exhaustive", verify.exhaustive);
  v->add_option("--samples", verify.samples)->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.seed);
  v->add_option("--divisor-override", verify.divisor_override)->check(CLI::PositiveNumber);
  v->add_option("--bound-multiplier", verify.multiplier)->check(CLI::PositiveNumber);
  v->add_option("--workers", verify.workers)->check(CLI::Range(1u, 256u));
  v->add_option("--max-violations", verify.max_violations);
  v->add_flag("--stop-at-first", verify.stop_at_first);
  v->add_flag("--allow-q-above-v", verify.allow_q_above_v);
  v->add_option("--format", verify.format)->check(CLI::IsMember({"text", "json"}));
  add_budget(v, verify.budget);

  ProbeArgs probe;
  auto* p = app.add_subcommand("probe", "random search for counts not divisible by a divisor");
  p->add_option("--ring", probe.ring)->required()->check(CLI::Range(u64{2}, u64{1} << 31));
  p->add_option("--vars", probe.vars)->required()->check(CLI::Range(1, 32));
  p->add_option("--degree", probe.degree)->check(CLI::Range(1, 3));
  p->add_option("--divisor", probe.divisor)->required()->check(CLI::PositiveNumber);
  p->add_option("--tries", probe.tries)->required()->check(CLI::PositiveNumber);
  p->add_option("--seed", probe.seed);
  p->add_flag("--stop-at-first", probe.stop_at_first);
  p->add_flag("--verbose", probe.verbose, "print the polynomial behind each remainder");
  add_budget(p, probe.budget);

  ImageArgs image;
  auto* im = app.add_subcommand("image", "image of a x^2 + b x + c over Z_{2^r} as slices");
  im->add_option("--ring-exp", image.r)->required()->check(CLI::Range(1, 24));
  im->add_option("--a", image.a);
  im->add_option("--b", image.b);
  im->add_option("--c", image.c);
  im->add_option("--l", image.l, "domain base point");
  im->add_option("--v", image.v, "restrict x to l + 2^{r-v} j");
  im->add_flag("--check", image.check, "compare with direct enumeration");
  im->add_option("--format", image.format)->check(CLI::IsMember({"text", "json"}));

  IntersectArgs inter;
  auto* in = app.add_subcommand("intersect", "multiplicative intersection of quadratic images");
  in->add_option("--ring-exp", inter.r)->required()->check(CLI::Range(1, 20));
  in->add_option("--p", inter.p, "a,b,c,l,v")->required();
  in->add_option("--q", inter.q, "a,b,c,l,q");
  in->add_option("--d", inter.d, "free term 2^{r-d} h, h < 2^d");
  in->add_option("--s-e", inter.e);
  in->add_option("--s-v", inter.v);

  ExpsumArgs expsum;
  auto* es = app.add_subcommand("expsum", "fiber counts and the exponential sum");
  es->add_option("--poly", expsum.poly, "e.g. \"poly mod 4: x1^2 + 2*x1*x2\"")->required();
  es->add_flag("--full", expsum.full, "sum over Z_m^n instead of the Boolean cube");
  es->add_option("--normalizer", expsum.normalizer, "R > 0; also prints sum / R")->check(CLI::PositiveNumber);
  add_budget(es, expsum.budget);

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "closed-form divisibility bounds");
  b->add_flag("--ax", bound.ax);
  b->add_flag("--marshall-ramage", bound.mr);
  b->add_flag("--theorem1", bound.t1);
  b->add_flag("--theorem2", bound.t2);
  b->add_option("--corollary", bound.corollary, "a, b or c");
  b->add_option("--ring", bound.ring)->check(CLI::Range(u64{2}, u64{1} << 31));
  b->add_option("--prime", bound.prime);
  b->add_option("--exp", bound.exp)->check(CLI::Range(1, 62));
  b->add_option("--vars", bound.vars)->required()->check(CLI::Range(1, 1 << 20));
  b->add_option("--degree", bound.degree)->check(CLI::PositiveNumber);
  b->add_option("--q", bound.q, "theorem 1: one entry per prime, comma separated");
  b->add_option("--v", bound.v);
  b->add_flag("--explain", bound.explain, "print the instantiated formula");

  CampaignArgs campaign;
  auto* cp = app.add_subcommand("campaign", "run every cell of a config file");
  cp->add_option("--config", campaign.config)->required();
  cp->add_option("--output", campaign.output, "overrides the config's output directory");
  cp->add_flag("--dry-run", campaign.dry_run, "only print the estimates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) return cmd_census(census, out);
    if (m->parsed()) return cmd_metrics(metrics, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (p->parsed()) return cmd_probe(probe, out);
    if (im->parsed()) return cmd_image(image, out);
    if (in->parsed()) return cmd_intersect(inter, out);
    if (es->parsed()) return cmd_expsum(expsum, out);
    if (b->parsed()) return cmd_bound(bound, out);
    if (cp->parsed()) return cmd_campaign(campaign, out, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ringcensus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ringcensus
