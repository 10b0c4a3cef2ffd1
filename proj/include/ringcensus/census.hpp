#pragma once

// Exhaustive solution-count census over every polynomial of a (m, n, d)
// cell, metrics derived from the resulting spectrum, and the random
// divisibility probe.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringcensus/budget.hpp"
#include "ringcensus/poly.hpp"

namespace ringcensus {

struct Cell {
  u64 m = 2;
  int n = 1;
  int d = 2;

  /// Throws std::invalid_argument on an unsupported cell.
  void validate() const;
  std::string label() const;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Solution count -> number of polynomials (constants included) attaining it.
struct Spectrum {
  Cell cell;
  std::map<u64, u128> entries;

  /// Sum of multiplicities; m^{coef_count+1} for a complete census.
  u128 total_polynomials() const;
  /// Sum of key * multiplicity; m^{coef_count} * m^n for a complete census.
  u128 total_solutions() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

struct CensusOptions {
  unsigned workers = 1;
  u64 budget = default_budget();
  /// Run even when the estimate exceeds the budget.
  bool force = false;
};

/// Estimated point evaluations m^{coef_count} * m^n.
long double census_cost(const Cell& cell);

/// Exact spectrum. Throws BudgetExceeded when census_cost exceeds the
/// budget and force is not set. Output does not depend on the worker count.
Spectrum run_census(const Cell& cell, const CensusOptions& options = {});

/// Exact rational p/q, rendered as a percentage with one decimal.
struct Ratio {
  u128 num = 0;
  u128 den = 1;

  /// Percentage in tenths, rounded half up: 1/3 -> 333.
  u64 tenths() const;
  /// "33.3"
  std::string percent() const;
  double value() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct MetricsReport {
  Cell cell;
  /// The spectrum has no nonzero key; min_divisibility is 0.
  bool degenerate = false;
  /// gcd of all nonzero keys.
  u64 min_divisibility = 0;
  /// Share of polynomials whose count c has D | c but D*rad(m) does not divide c.
  Ratio pct_min_div;
  /// Number of distinct solution counts.
  u64 slots_used = 0;
  /// Multiples of D in [0, m^n]: m^n / D + 1.
  u64 slot_capacity = 0;
  Ratio pct_slots_used;
  /// Smallest nonzero key.
  std::optional<u64> first_gap;
  /// Largest key minus the second largest.
  std::optional<u64> last_gap;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Throws std::invalid_argument for an empty spectrum.
MetricsReport derive_metrics(const Spectrum& spectrum);

/// One residue class of a sampled polynomial whose count is not a multiple
/// of the divisor.
struct ProbeRemainder {
  u64 try_index;
  Poly poly;
  u64 residue;
  u64 count;
  u64 remainder;
};

struct ProbeOptions {
  /// Return as soon as one remainder is seen.
  bool stop_at_first = false;
  u64 budget = default_budget();
};

/// Samples `tries` uniform constant-free coefficient vectors from a seeded
/// mt19937_64 (rejection sampling, so results are platform independent),
/// computes each full fiber histogram and reports every residue whose count
/// is not divisible by `divisor`.
std::vector<ProbeRemainder> random_divisibility_probe(const Cell& cell, u64 divisor, u64 tries, u64 seed,
                                                      const ProbeOptions& options = {});

}  // namespace ringcensus
