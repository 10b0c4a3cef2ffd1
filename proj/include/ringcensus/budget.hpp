#pragma once

#include <stdexcept>
#include <string>

#include "ringcensus/ring.hpp"

namespace ringcensus {

/// Default ceiling on point evaluations for a single request.
inline constexpr u64 kDefaultBudget = 10'000'000'000ULL;

/// kDefaultBudget unless RINGCENSUS_BUDGET holds a positive integer.
u64 default_budget();

/// Raised when a request's estimated work exceeds the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, long double estimate, u64 budget);

  long double estimate() const noexcept { return estimate_; }
  u64 budget() const noexcept { return budget_; }

 private:
  long double estimate_;
  u64 budget_;
};

/// Formats a possibly huge operation count, e.g. "6.87e+10".
std::string format_estimate(long double ops);

std::string to_string_u128(u128 v);
/// Parses a non-negative decimal integer into 128 bits; throws std::invalid_argument.
u128 parse_u128(const std::string& s);

}  // namespace ringcensus
