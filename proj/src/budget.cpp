#include "ringcensus/budget.hpp"

#include <cstdio>
#include <cstdlib>

namespace ringcensus {

u64 default_budget() {
  const char* env = std::getenv("RINGCENSUS_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  return kDefaultBudget;
}

BudgetExceeded::BudgetExceeded(const std::string& what, long double estimate, u64 budget)
    : std::runtime_error(what + " (estimated " + format_estimate(estimate) + " operations, budget " +
                         format_estimate(static_cast<long double>(budget)) + ")"),
      estimate_(estimate),
      budget_(budget) {}

std::string format_estimate(long double ops) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3Lg", ops);
  return buf;
}

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

u128 parse_u128(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  const u128 max = ~u128{0};
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a non-negative integer: " + s);
    const unsigned d = static_cast<unsigned>(c - '0');
    if (v > (max - d) / 10) throw std::invalid_argument("integer too large: " + s);
    v = v * 10 + d;
  }
  return v;
}

}  // namespace ringcensus
