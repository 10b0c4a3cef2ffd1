#include "ringcensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "ringcensus/random.hpp"

namespace ringcensus {

void Cell::validate() const {
  RingSpec ring(m);
  if (n < 1) throw std::invalid_argument("cell needs at least one variable");
  if (d < 1 || d > kMaxDegree) throw std::invalid_argument("degree must be 1, 2 or 3");
}

std::string Cell::label() const {
  return "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(d) + ")";
}

u128 Spectrum::total_polynomials() const {
  u128 t = 0;
  for (const auto& [k, c] : entries) t += c;
  return t;
}

u128 Spectrum::total_solutions() const {
  u128 t = 0;
  for (const auto& [k, c] : entries) t += c * k;
  return t;
}

long double census_cost(const Cell& cell) {
  const long double m = static_cast<long double>(cell.m);
  return std::pow(m, static_cast<long double>(coef_count(cell.n, cell.d))) * std::pow(m, static_cast<long double>(cell.n));
}

namespace {

using Values = std::vector<std::uint32_t>;

// The last L coefficients are handled together: for each prefix of the
// remaining coefficients, a joint histogram over (prefix value, tuple of the
// last L monomial values) yields every completion's fiber counts without
// touching individual points again.
struct CensusPlan {
  u64 m = 0;
  std::size_t points = 0;
  std::size_t coefs = 0;
  std::size_t tail = 0;            // L
  std::vector<Values> mono;        // mono[j][x]
  std::vector<std::uint32_t> tuple_id;
  std::size_t tuple_count = 0;
  u64 combos = 0;                  // m^L
  std::vector<std::uint32_t> shift;  // shift[combo * tuple_count + id]
  u64 groups = 0;                  // m^(C-L)
};

std::vector<Values> monomial_tables(const Cell& cell, std::size_t points) {
  const auto& monos = canonical_monomials(cell.n, cell.d);
  std::vector<Values> out(monos.size(), Values(points));
  std::vector<u64> x(static_cast<std::size_t>(cell.n), 0);
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t j = 0; j < monos.size(); ++j) {
      u64 v = 1;
      for (int i : monos[j].indices()) v = v * x[static_cast<std::size_t>(i)] % cell.m;
      out[j][p] = static_cast<std::uint32_t>(v);
    }
    for (std::size_t i = x.size(); i > 0; --i) {
      if (++x[i - 1] < cell.m) break;
      x[i - 1] = 0;
    }
  }
  return out;
}

std::size_t distinct_tuples(const std::vector<Values>& mono, std::size_t tail, std::size_t points,
                            std::vector<std::uint32_t>* ids, std::vector<std::vector<std::uint32_t>>* tuples) {
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  const std::size_t first = mono.size() - tail;
  if (ids) ids->resize(points);
  std::vector<std::uint32_t> key(tail);
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t l = 0; l < tail; ++l) key[l] = mono[first + l][p];
    auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(index.size()));
    if (inserted && tuples) tuples->push_back(key);
    if (ids) (*ids)[p] = it->second;
  }
  return index.size();
}

CensusPlan make_plan(const Cell& cell) {
  CensusPlan plan;
  plan.m = cell.m;
  plan.points = static_cast<std::size_t>(ipow(cell.m, static_cast<u64>(cell.n)));
  plan.mono = monomial_tables(cell, plan.points);
  plan.coefs = plan.mono.size();

  // Pick the tail length with the lowest estimated cost per polynomial.
  const long double m = static_cast<long double>(cell.m);
  const long double pts = static_cast<long double>(plan.points);
  long double best = 0;
  for (std::size_t tail = 1; tail <= std::min<std::size_t>(plan.coefs, 4); ++tail) {
    const long double combos = std::pow(m, static_cast<long double>(tail));
    const std::size_t tuples = distinct_tuples(plan.mono, tail, plan.points, nullptr, nullptr);
    const long double joint = m * static_cast<long double>(tuples);
    if (combos * static_cast<long double>(tuples) > (1 << 22) || joint > (1 << 24)) break;
    const long double cost = (2 * pts + joint) / combos + std::min(pts, joint) + m;
    if (tail == 1 || cost < best) {
      best = cost;
      plan.tail = tail;
    }
  }

  std::vector<std::vector<std::uint32_t>> tuples;
  plan.tuple_count = distinct_tuples(plan.mono, plan.tail, plan.points, &plan.tuple_id, &tuples);
  plan.combos = ipow(cell.m, plan.tail);
  plan.groups = ipow(cell.m, plan.coefs - plan.tail);
  plan.shift.resize(static_cast<std::size_t>(plan.combos) * plan.tuple_count);
  std::vector<u64> digits(plan.tail, 0);
  for (u64 combo = 0; combo < plan.combos; ++combo) {
    for (std::size_t id = 0; id < plan.tuple_count; ++id) {
      u64 s = 0;
      for (std::size_t l = 0; l < plan.tail; ++l) s = (s + digits[l] * tuples[id][l]) % cell.m;
      plan.shift[static_cast<std::size_t>(combo) * plan.tuple_count + id] = static_cast<std::uint32_t>(s);
    }
    for (std::size_t l = plan.tail; l > 0; --l) {
      if (++digits[l - 1] < cell.m) break;
      digits[l - 1] = 0;
    }
  }
  return plan;
}

// Counts polynomials by solution count for prefix groups [begin, end).
std::vector<u64> census_block(const CensusPlan& plan, u64 begin, u64 end) {
  const std::uint32_t m = static_cast<std::uint32_t>(plan.m);
  const std::size_t prefix_len = plan.coefs - plan.tail;
  std::vector<u64> by_count(plan.points + 1, 0);
  if (begin >= end) return by_count;

  std::vector<u64> digits = index_to_digits(begin, plan.m, prefix_len);
  Values base(plan.points, 0);
  for (std::size_t j = 0; j < prefix_len; ++j) {
    if (digits[j] == 0) continue;
    const auto& mono = plan.mono[j];
    for (std::size_t p = 0; p < plan.points; ++p)
      base[p] = static_cast<std::uint32_t>((base[p] + digits[j] * mono[p]) % m);
  }

  const std::size_t joint_size = plan.m * plan.tuple_count;
  std::vector<std::uint32_t> joint(joint_size, 0);
  struct Entry {
    std::uint32_t value;
    std::uint32_t id;
    std::uint32_t count;
  };
  std::vector<Entry> entries;
  entries.reserve(std::min(joint_size, plan.points));
  std::vector<u64> fiber(plan.m);

  for (u64 g = begin;;) {
    for (std::size_t p = 0; p < plan.points; ++p) ++joint[plan.tuple_id[p] * plan.m + base[p]];
    entries.clear();
    for (std::size_t i = 0; i < joint_size; ++i)
      if (joint[i]) {
        entries.push_back({static_cast<std::uint32_t>(i % plan.m), static_cast<std::uint32_t>(i / plan.m), joint[i]});
        joint[i] = 0;
      }

    for (u64 combo = 0; combo < plan.combos; ++combo) {
      const std::uint32_t* shift = &plan.shift[static_cast<std::size_t>(combo) * plan.tuple_count];
      std::fill(fiber.begin(), fiber.end(), 0);
      for (const Entry& e : entries) {
        std::uint32_t v = e.value + shift[e.id];
        if (v >= m) v -= m;
        fiber[v] += e.count;
      }
      for (u64 c : fiber) ++by_count[c];
    }

    if (++g >= end) break;
    // Advance the prefix odometer; every changed digit (wrap included) adds
    // its monomial once, since m * mono = 0.
    for (std::size_t j = prefix_len; j > 0; --j) {
      const auto& mono = plan.mono[j - 1];
      for (std::size_t p = 0; p < plan.points; ++p) {
        std::uint32_t v = base[p] + mono[p];
        base[p] = v >= m ? v - m : v;
      }
      if (++digits[j - 1] < plan.m) break;
      digits[j - 1] = 0;
    }
  }
  return by_count;
}

}  // namespace

Spectrum run_census(const Cell& cell, const CensusOptions& options) {
  cell.validate();
  const long double cost = census_cost(cell);
  if (!options.force && cost > static_cast<long double>(options.budget))
    throw BudgetExceeded("census " + cell.label() + " exceeds the work budget", cost, options.budget);
  if (std::pow(static_cast<long double>(cell.m), static_cast<long double>(cell.n)) > (1ULL << 32))
    throw BudgetExceeded("census " + cell.label() + " domain too large", cost, options.budget);

  const CensusPlan plan = make_plan(cell);
  const unsigned workers = static_cast<unsigned>(std::clamp<u64>(options.workers, 1, std::max<u64>(plan.groups, 1)));

  std::vector<std::vector<u64>> partial(workers);
  auto block = [&](unsigned w) {
    const u64 begin = static_cast<u64>(static_cast<u128>(plan.groups) * w / workers);
    const u64 end = static_cast<u64>(static_cast<u128>(plan.groups) * (w + 1) / workers);
    partial[w] = census_block(plan, begin, end);
  };
  if (workers == 1) {
    block(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(block, w);
    for (auto& t : threads) t.join();
  }

  Spectrum s;
  s.cell = cell;
  for (std::size_t c = 0; c <= plan.points; ++c) {
    u128 total = 0;
    for (const auto& part : partial) total += part[c];
    if (total) s.entries[c] = total;
  }
  return s;
}

u64 Ratio::tenths() const {
  if (den == 0) return 0;
  return static_cast<u64>((2000 * num + den) / (2 * den));
}

std::string Ratio::percent() const {
  const u64 t = tenths();
  return std::to_string(t / 10) + "." + std::to_string(t % 10);
}

double Ratio::value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

MetricsReport derive_metrics(const Spectrum& spectrum) {
  if (spectrum.entries.empty()) throw std::invalid_argument("empty spectrum");
  const Cell& cell = spectrum.cell;
  MetricsReport r;
  r.cell = cell;

  u64 gcd = 0;
  for (const auto& [k, c] : spectrum.entries)
    if (k != 0) gcd = std::gcd(gcd, k);
  r.min_divisibility = gcd;
  r.degenerate = gcd == 0;

  const u128 total = spectrum.total_polynomials();
  r.pct_min_div.den = total;
  if (!r.degenerate) {
    const u64 stronger = gcd * RingSpec(cell.m).radical();
    for (const auto& [k, c] : spectrum.entries)
      if (k != 0 && k % gcd == 0 && k % stronger != 0) r.pct_min_div.num += c;
  }

  r.slots_used = spectrum.entries.size();
  const u64 domain = ipow(cell.m, static_cast<u64>(cell.n));
  r.slot_capacity = r.degenerate ? 1 : domain / gcd + 1;
  r.pct_slots_used = {r.slots_used, r.slot_capacity};

  for (const auto& [k, c] : spectrum.entries)
    if (k != 0) {
      r.first_gap = k;
      break;
    }
  if (spectrum.entries.size() >= 2) {
    auto it = spectrum.entries.rbegin();
    const u64 top = it->first;
    ++it;
    r.last_gap = top - it->first;
  }
  return r;
}

std::vector<ProbeRemainder> random_divisibility_probe(const Cell& cell, u64 divisor, u64 tries, u64 seed,
                                                      const ProbeOptions& options) {
  cell.validate();
  if (tries < 1) throw std::invalid_argument("probe needs at least one try");
  if (divisor < 1) throw std::invalid_argument("divisor must be positive");
  const RingSpec ring(cell.m);
  SeededRng rng(seed);
  const std::size_t c = coef_count(cell.n, cell.d);
  std::vector<u64> coeffs(c);
  std::vector<ProbeRemainder> out;
  for (u64 t = 0; t < tries; ++t) {
    for (auto& x : coeffs) x = rng.below(cell.m);
    const Poly p(ring, cell.n, cell.d, coeffs, 0);
    const auto h = value_histogram(p, options.budget);
    for (u64 v = 0; v < cell.m; ++v) {
      const u64 count = h.counts[v];
      if (count % divisor == 0) continue;
      out.push_back({t, p, v, count, count % divisor});
      if (options.stop_at_first) return out;
    }
  }
  return out;
}

}  // namespace ringcensus
