#pragma once

// Images of univariate quadratics over Z_{2^r} as unions of slices (cosets
// of ideals with multiplicities), counting identities about them, and
// multiplicative intersections of multisets.

#include <map>
#include <optional>
#include <vector>

#include "ringcensus/ring.hpp"

namespace ringcensus {

/// value -> multiplicity; zero multiplicities are never stored.
using Multiset = std::map<u64, u64>;

/// multiplicity * {offset + period * i : i < 2^r / period}
struct Slice {
  u64 offset = 0;
  u64 period = 1;
  u64 multiplicity = 1;

  bool operator==(const Slice&) const = default;
};

class SliceMultiset {
 public:
  /// 1 <= r <= 62.
  explicit SliceMultiset(int r);

  int r() const noexcept { return r_; }
  u64 modulus() const noexcept { return u64{1} << r_; }
  const std::vector<Slice>& slices() const noexcept { return slices_; }

  /// period must be a power of two dividing 2^r, multiplicity positive.
  /// The offset is reduced into [0, period).
  void add(u64 offset, u64 period, u64 multiplicity);

  /// Sorts slices and merges those with equal offset and period.
  void normalize();

  /// Number of elements counted with multiplicity.
  u128 total() const;
  /// Materialized value -> multiplicity map. Throws std::length_error past
  /// 2^24 distinct entries.
  Multiset expand() const;

  /// Multiset equality.
  bool operator==(const SliceMultiset& o) const;

 private:
  int r_;
  std::vector<Slice> slices_;
};

/// a x^2 + b x + c over Z_{2^r} with w = o(a), h = o(b), m = min(w, h).
struct QuadParams {
  u64 a = 0, b = 0, c = 0;
  int r = 1;
  int w = 0, h = 0, m = 0;

  static QuadParams make(u64 a, u64 b, u64 c, int r);
};

/// Parameters after restricting x to {l + 2^{r-v} j}: a' = a 4^k,
/// b' = (2al + b) 2^k, c' = P(l), k = r - v, m* = m' - k.
struct RestrictedQuad {
  QuadParams primed;
  int k = 0;
  int m_star = 0;
};

RestrictedQuad restrict_domain(const QuadParams& p, u64 l, int v);

/// Closed-form image of a x^2 + b x + c over all of Z_{2^r}.
SliceMultiset image_quadratic(u64 a, u64 b, u64 c, int r);

/// Closed-form image with x restricted to {l + 2^{r-v} j : j < 2^v}.
SliceMultiset image_quadratic_restricted(u64 a, u64 b, u64 c, int r, u64 l, int v);

/// Image by evaluating every domain point; r <= 24.
Multiset image_by_enumeration(u64 a, u64 b, u64 c, int r, u64 l, int v);

/// #{(x, y) in Z_{2^r}^2 : x y = target}.
u64 count_product_pairs(u64 target, int r);

struct SquareFiber {
  u64 count = 0;
  /// Common order of all roots, known when a_exp < r/2.
  std::optional<int> witness_order;
};

/// Roots t of t^2 = 2^{2a} + 2^{2a+3} k over Z_{2^r}, by the closed form.
SquareFiber square_fiber(int a_exp, u64 k_param, int r);

struct SliceCount {
  u64 closed_form = 0;
  u128 materialized = 0;
  bool agree() const noexcept { return materialized == closed_form; }
};

/// Size of the single-f slice of a restricted type-(c) image: 2^{r-f-k-1}.
/// Needs f <= ceil((r-m')/2) - 1 and r > m' >= k >= 0.
SliceCount slice_count(int f, int m_prime, int k, int r);

/// Size of the slices f_s.. plus the tail: 2^{r-f_s-k}.
/// Needs 0 <= f_s <= ceil((r-m')/2) and r >= m' >= k >= 0.
SliceCount cumulative_slice_count(int f_s, int m_prime, int k, int r);

/// sum over equal values of the product of multiplicities.
u128 multiplicative_intersection(const Multiset& a, const Multiset& b);

struct IntersectionResult {
  u128 count = 0;
  u64 divisor = 1;
  bool divides() const noexcept { return count % divisor == 0; }
};

/// A quadratic with x restricted to {l + 2^{r-v} j : j < 2^v}.
struct DomainQuad {
  u64 a = 0, b = 0, c = 0;
  u64 l = 0;
  int v = 0;
};

/// #{(x, y, h) : P(x) = Q(y) + 2^{r-d} h, h < 2^d} with both domains
/// restricted, by enumeration; divisor 2^{min(v_P, v_Q) + d}.
/// Needs d <= min(v_P, v_Q) <= r.
IntersectionResult intersection_size(const DomainQuad& p, const DomainQuad& q, int d, int r);

/// The multiset made of, for every i < 2^e: f copies of
/// {2^{r-e} i + 2^{r-v+f}(2s+1) : s < 2^{v-f-1}} for each f < v, and
/// v + 1 copies of 2^{r-e} i.
Multiset s_multiset(int e, int v, int r);

/// |s_multiset(e, v, r) * image of P| with P's domain exponent p.v as q;
/// divisor 2^{e + min(q, v, ceil(r/2))}. Needs e <= min(q, v) <= r.
IntersectionResult intersection_with_S(const DomainQuad& p, int e, int v, int r);

}  // namespace ringcensus
