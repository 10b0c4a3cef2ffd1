#include "ringcensus/expsum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringcensus {

namespace {

std::vector<std::complex<double>> roots_of_unity(u64 m) {
  std::vector<std::complex<double>> w(m);
  for (u64 k = 0; k < m; ++k) w[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
  return w;
}

}  // namespace

std::vector<u64> boolean_fiber_counts(const Poly& q, u64 budget) {
  const u64 axis[2] = {0, 1};
  return value_histogram_on(q, axis, budget).counts;
}

std::complex<double> weighted_sum(const std::vector<u64>& counts) {
  const auto w = roots_of_unity(counts.size());
  std::complex<double> s = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) s += static_cast<double>(counts[k]) * w[k];
  return s;
}

std::complex<double> exponential_sum(const Poly& q, bool restrict_to_cube, u64 budget) {
  const u64 m = q.modulus();
  const u64 side = restrict_to_cube ? std::min<u64>(2, m) : m;
  const long double points = std::pow(static_cast<long double>(side), static_cast<long double>(q.n_vars()));
  if (points > static_cast<long double>(budget)) throw BudgetExceeded("domain too large", points, budget);
  const auto w = roots_of_unity(m);
  std::vector<u64> x(static_cast<std::size_t>(q.n_vars()), 0);
  std::complex<double> s = 0;
  while (true) {
    s += w[q.evaluate_raw(x)];
    std::size_t i = x.size();
    while (i > 0) {
      if (++x[i - 1] < side) break;
      x[--i] = 0;
    }
    if (i == 0) return s;
  }
}

AmplitudeSum amplitude_sum(const Poly& q, double normalizer, u64 budget) {
  if (!(normalizer > 0)) throw std::invalid_argument("normalizer must be positive");
  AmplitudeSum a;
  a.m = q.modulus();
  a.counts = boolean_fiber_counts(q, budget);
  a.sum = weighted_sum(a.counts);
  a.normalizer = normalizer;
  return a;
}

}  // namespace ringcensus
