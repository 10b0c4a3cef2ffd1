#include "ringcensus/report.hpp"

#include <set>
#include <sstream>

namespace ringcensus {

std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "solutions,polynomials\n";
  for (const auto& [k, c] : s.entries) out += std::to_string(k) + "," + to_string_u128(c) + "\n";
  return out;
}

Spectrum spectrum_from_csv(std::string_view text, const Cell& cell) {
  Spectrum s;
  s.cell = cell;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "solutions,polynomials")
    throw std::invalid_argument("spectrum CSV must start with 'solutions,polynomials'");
  std::size_t row = 1;
  bool have_prev = false;
  u64 prev = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("row " + std::to_string(row) + ": missing comma");
    u128 key, count;
    try {
      key = parse_u128(line.substr(0, comma));
      count = parse_u128(line.substr(comma + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("row " + std::to_string(row) + ": " + e.what());
    }
    if (key > UINT64_MAX) throw std::invalid_argument("row " + std::to_string(row) + ": key out of range");
    const u64 k = static_cast<u64>(key);
    if (have_prev && k <= prev) throw std::invalid_argument("row " + std::to_string(row) + ": keys not ascending");
    have_prev = true;
    prev = k;
    s.entries[k] = count;
  }
  return s;
}

std::string spectrum_to_markdown(const Spectrum& s) {
  std::string out = "| m=" + std::to_string(s.cell.m) + " n=" + std::to_string(s.cell.n) +
                    " d=" + std::to_string(s.cell.d) + " | |\n|---:|---:|\n";
  for (const auto& [k, c] : s.entries) out += "| " + std::to_string(k) + " | " + to_string_u128(c) + " |\n";
  return out;
}

nlohmann::json u128_to_json(u128 v) {
  if (v <= UINT64_MAX) return static_cast<u64>(v);
  return to_string_u128(v);
}

u128 u128_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<u64>();
  if (j.is_number_integer() && j.get<i64>() >= 0) return static_cast<u64>(j.get<i64>());
  if (j.is_string()) return parse_u128(j.get<std::string>());
  throw std::invalid_argument("expected a non-negative integer");
}

namespace {

nlohmann::json cell_json(const Cell& c) { return {{"m", c.m}, {"n", c.n}, {"d", c.d}}; }

Cell cell_from_json(const nlohmann::json& j) {
  Cell c{j.at("m").get<u64>(), j.at("n").get<int>(), j.at("d").get<int>()};
  c.validate();
  return c;
}

nlohmann::json ratio_json(const Ratio& r) {
  return {{"numerator", u128_to_json(r.num)}, {"denominator", u128_to_json(r.den)}, {"percent", r.percent()}};
}

}  // namespace

nlohmann::json spectrum_to_json(const Spectrum& s) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, c] : s.entries) entries.push_back({{"solutions", k}, {"polynomials", u128_to_json(c)}});
  return {{"cell", cell_json(s.cell)}, {"entries", entries}};
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  try {
    Spectrum s;
    s.cell = cell_from_json(j.at("cell"));
    for (const auto& e : j.at("entries")) s.entries[e.at("solutions").get<u64>()] = u128_from_json(e.at("polynomials"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed spectrum JSON: ") + e.what());
  }
}

std::string metric_key(Metric m) {
  switch (m) {
    case Metric::MinDivisibility: return "min_divisibility";
    case Metric::PctMinDiv: return "pct_min_div";
    case Metric::SlotsUsed: return "slots_used";
    case Metric::PctSlotsUsed: return "pct_slots_used";
    case Metric::FirstGap: return "first_gap";
    case Metric::LastGap: return "last_gap";
  }
  return "?";
}

std::string metric_title(Metric m) {
  switch (m) {
    case Metric::MinDivisibility: return "Minimum divisibility of the number of solutions";
    case Metric::PctMinDiv: return "Percent of polynomials whose number of solutions has minimum divisibility";
    case Metric::SlotsUsed: return "Number of distinct numbers of solutions";
    case Metric::PctSlotsUsed: return "Percent of slots allowed by minimum divisibility that are used";
    case Metric::FirstGap: return "First gap between numbers of solutions";
    case Metric::LastGap: return "Last gap between numbers of solutions";
  }
  return "?";
}

std::string metric_value(const MetricsReport& r, Metric m) {
  switch (m) {
    case Metric::MinDivisibility: return std::to_string(r.min_divisibility);
    case Metric::PctMinDiv: return r.pct_min_div.percent() + "%";
    case Metric::SlotsUsed: return std::to_string(r.slots_used);
    case Metric::PctSlotsUsed: return r.pct_slots_used.percent() + "%";
    case Metric::FirstGap: return r.first_gap ? std::to_string(*r.first_gap) : "undefined";
    case Metric::LastGap: return r.last_gap ? std::to_string(*r.last_gap) : "undefined";
  }
  return "?";
}

nlohmann::json metrics_to_json(const MetricsReport& r) {
  nlohmann::json j{{"cell", cell_json(r.cell)},
                   {"degenerate", r.degenerate},
                   {"min_divisibility", r.min_divisibility},
                   {"pct_min_div", ratio_json(r.pct_min_div)},
                   {"slots_used", r.slots_used},
                   {"slot_capacity", r.slot_capacity},
                   {"pct_slots_used", ratio_json(r.pct_slots_used)}};
  j["first_gap"] = r.first_gap ? nlohmann::json(*r.first_gap) : nlohmann::json("undefined");
  j["last_gap"] = r.last_gap ? nlohmann::json(*r.last_gap) : nlohmann::json("undefined");
  return j;
}

namespace {

struct Grid {
  std::set<u64> rings;
  std::set<int> vars;
  std::map<std::pair<u64, int>, const MetricsReport*> at;
};

Grid make_grid(const std::vector<MetricsReport>& reports) {
  Grid g;
  for (const auto& r : reports) {
    g.rings.insert(r.cell.m);
    g.vars.insert(r.cell.n);
    g.at[{r.cell.m, r.cell.n}] = &r;
  }
  return g;
}

std::string grid_value(const Grid& g, u64 m, int n, Metric metric) {
  const auto it = g.at.find({m, n});
  return it == g.at.end() ? "" : metric_value(*it->second, metric);
}

}  // namespace

std::string metrics_grid_markdown(const std::vector<MetricsReport>& reports, Metric metric) {
  const Grid g = make_grid(reports);
  std::string degrees;
  std::set<int> ds;
  for (const auto& r : reports) ds.insert(r.cell.d);
  for (int d : ds) degrees += (degrees.empty() ? "" : ", ") + std::to_string(d);

  std::string out = "**" + metric_title(metric) + "** (degree " + degrees + ")\n\n| m \\ n |";
  for (int n : g.vars) out += " " + std::to_string(n) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < g.vars.size(); ++i) out += "---:|";
  out += "\n";
  for (u64 m : g.rings) {
    out += "| " + std::to_string(m) + " |";
    for (int n : g.vars) out += " " + grid_value(g, m, n, metric) + " |";
    out += "\n";
  }
  return out;
}

std::string metrics_grid_csv(const std::vector<MetricsReport>& reports, Metric metric) {
  const Grid g = make_grid(reports);
  std::string out = "m";
  for (int n : g.vars) out += ",n" + std::to_string(n);
  out += "\n";
  for (u64 m : g.rings) {
    out += std::to_string(m);
    for (int n : g.vars) out += "," + grid_value(g, m, n, metric);
    out += "\n";
  }
  return out;
}

nlohmann::json metrics_grid_json(const std::vector<MetricsReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(metrics_to_json(r));
  return arr;
}

}  // namespace ringcensus
