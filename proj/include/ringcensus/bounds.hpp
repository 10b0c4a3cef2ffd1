#pragma once

// Closed-form lower bounds on the divisibility of solution counts.

#include <string>
#include <utility>
#include <vector>

#include "ringcensus/ring.hpp"

namespace ringcensus {

enum class BoundKind { Ax, MarshallRamage, Theorem1, Theorem2, Corollary1a, Corollary1b, Corollary1c };

std::string to_string(BoundKind k);

struct DivisibilityBound {
  u64 value = 1;
  BoundKind provenance = BoundKind::Ax;
  /// Echo of the inputs, e.g. {"m", "12"}, {"q", "(1,0)"}.
  std::vector<std::pair<std::string, std::string>> params;
  /// The instantiated formula, e.g. "2^(ceil(2*3/2)-1) * 3^(ceil(3/2)-1) = 12".
  std::string formula;
};

/// p^{r(ceil(n/d)-1)}. Throws std::invalid_argument if p is not prime or
/// n, d, r < 1.
DivisibilityBound ax_bound(u64 p, int r, int n, int d);

/// prod_{r_i=1} p_i^{ceil(n/d)-1} * prod_{r_i>1} p_i^{ceil(r_i n/2)-1}, and 1
/// for a single variable.
DivisibilityBound marshall_ramage_bound(const RingSpec& ring, int n, int d);

/// The same product with q_i added to every exponent. q lists one entry per
/// prime of m in increasing prime order. Requires n >= 2 and 0 <= q_i <= r_i.
DivisibilityBound theorem1_bound(const RingSpec& ring, int n, int d, const std::vector<int>& q);

/// 2^{ceil((r(n-1)+min(2v,r))/2)+q-1}. Requires r >= 1, n >= 3, 0 <= q, v <= r.
DivisibilityBound theorem2_bound(int r, int n, int q, int v);

enum class Corollary1Variant { A, B, C };

/// (a), (c): 2^{ceil((r(n-1)+min(2v,r))/2)-1}; (b): the Theorem-2 bound.
DivisibilityBound corollary1_bound(Corollary1Variant variant, int r, int n, int q, int v);

}  // namespace ringcensus
