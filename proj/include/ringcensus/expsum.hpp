#pragma once

// Fiber counts on the Boolean cube and the exponential sums built from them.

#include <complex>
#include <vector>

#include "ringcensus/poly.hpp"

namespace ringcensus {

/// counts[k] = #{y in {0,1}^n : Q(y) = k}. Throws BudgetExceeded when 2^n
/// evaluations exceed the budget.
std::vector<u64> boolean_fiber_counts(const Poly& q, u64 budget = default_budget());

/// sum_k counts[k] w^k with w = exp(2 pi i / m), m = counts.size().
std::complex<double> weighted_sum(const std::vector<u64>& counts);

/// sum of w^{Q(y)} over the cube or over all of Z_m^n, one term per point.
std::complex<double> exponential_sum(const Poly& q, bool restrict_to_cube, u64 budget = default_budget());

/// Absolute tolerance used when comparing the two summation paths.
inline constexpr double kSumTolerance = 1e-9;

struct AmplitudeSum {
  u64 m = 0;
  std::vector<u64> counts;
  std::complex<double> sum;
  /// Caller-supplied normalizing constant R > 0.
  double normalizer = 1.0;

  /// sum / R
  std::complex<double> amplitude() const { return sum / normalizer; }
};

/// Cube counts of Q weighted by powers of w. Throws std::invalid_argument
/// unless normalizer > 0.
AmplitudeSum amplitude_sum(const Poly& q, double normalizer, u64 budget = default_budget());

}  // namespace ringcensus
