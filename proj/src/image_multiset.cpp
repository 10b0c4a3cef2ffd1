#include "ringcensus/image_multiset.hpp"

#include <algorithm>
#include <stdexcept>

namespace ringcensus {

namespace {

constexpr std::size_t kExpandLimit = std::size_t{1} << 24;

void check_r(int r, int max_r) {
  if (r < 1 || r > max_r) throw std::invalid_argument("r must lie in [1, " + std::to_string(max_r) + "]");
}

u64 pow2(int e) { return u64{1} << e; }

int ceil_half(int x) { return x <= 0 ? 0 : (x + 1) / 2; }

// The closed form for a type-(c) image, occurrence exponents lowered by kdiv.
void add_case_c(SliceMultiset& out, const QuadParams& p, int kdiv) {
  const int r = p.r, m = p.m;
  const u64 mask = pow2(r) - 1;
  const u64 q = p.a >> p.w;
  const u64 q_inv = inverse_mod(q, pow2(r));
  // b^2 / 2^{m+2}, only its low r bits matter.
  const u128 bb = (static_cast<u128>(p.b) * p.b) & ((static_cast<u128>(1) << (r + m + 2)) - 1);
  const u64 quotient = static_cast<u64>(bb >> (m + 2)) & mask;
  const u64 t = (p.c + pow2(r) - static_cast<u64>((static_cast<u128>(quotient) * q_inv) & mask)) & mask;
  for (int f = 0; f < ceil_half(r - m); ++f) {
    const int me = std::min(f + 2, r - f - 1) + std::min(m, std::max(0, r - 2 * f - 3)) - kdiv;
    const u64 offset = (static_cast<u64>((static_cast<u128>(q) << (2 * f + m)) & mask) + t) & mask;
    out.add(offset, pow2(std::min(2 * f + 3 + m, r)), pow2(me));
  }
  out.add(t, pow2(r), pow2((r + m) / 2 - kdiv));
}

SliceMultiset image_from_params(const QuadParams& p, int kdiv) {
  SliceMultiset out(p.r);
  if (p.w > p.h) {
    out.add(p.c, pow2(p.m), pow2(p.m - kdiv));
  } else if (p.w == p.h) {
    if (p.m < p.r) out.add(p.c, pow2(p.m + 1), pow2(p.m + 1 - kdiv));
    else out.add(p.c, pow2(p.r), pow2(p.r - kdiv));
  } else {
    add_case_c(out, p, kdiv);
  }
  out.normalize();
  return out;
}

void check_domain(const DomainQuad& p, int r) {
  if (p.v < 0 || p.v > r) throw std::invalid_argument("domain exponent must lie in [0, r]");
}

// Single-f slice of the restricted type-(c) form with q' = 1, t' = 0.
void add_single_slice(SliceMultiset& s, int f, int m_prime, int k, int r) {
  const int me = std::min(f + 2, r - f - 1) + std::min(m_prime, std::max(0, r - 2 * f - 3)) - k;
  if (me < 0) throw std::invalid_argument("parameters give a fractional multiplicity");
  s.add(pow2(std::min(2 * f + m_prime, r)) & (pow2(r) - 1), pow2(std::min(2 * f + 3 + m_prime, r)), pow2(me));
}

}  // namespace

// ---- SliceMultiset ---------------------------------------------------------

SliceMultiset::SliceMultiset(int r) : r_(r) { check_r(r, 62); }

void SliceMultiset::add(u64 offset, u64 period, u64 multiplicity) {
  if (period == 0 || (period & (period - 1)) != 0 || period > modulus())
    throw std::invalid_argument("slice period must be a power of two dividing 2^r");
  if (multiplicity == 0) throw std::invalid_argument("slice multiplicity must be positive");
  slices_.push_back({offset & (period - 1), period, multiplicity});
}

void SliceMultiset::normalize() {
  std::sort(slices_.begin(), slices_.end(), [](const Slice& x, const Slice& y) {
    return x.period != y.period ? x.period < y.period : x.offset < y.offset;
  });
  std::vector<Slice> merged;
  for (const Slice& s : slices_) {
    if (!merged.empty() && merged.back().period == s.period && merged.back().offset == s.offset)
      merged.back().multiplicity += s.multiplicity;
    else
      merged.push_back(s);
  }
  slices_ = std::move(merged);
}

u128 SliceMultiset::total() const {
  u128 t = 0;
  for (const Slice& s : slices_) t += static_cast<u128>(s.multiplicity) * (modulus() / s.period);
  return t;
}

Multiset SliceMultiset::expand() const {
  Multiset out;
  for (const Slice& s : slices_) {
    const u64 n = modulus() / s.period;
    for (u64 i = 0; i < n; ++i) {
      out[s.offset + s.period * i] += s.multiplicity;
      if (out.size() > kExpandLimit) throw std::length_error("multiset too large to expand");
    }
  }
  return out;
}

bool SliceMultiset::operator==(const SliceMultiset& o) const { return r_ == o.r_ && expand() == o.expand(); }

// ---- images ----------------------------------------------------------------

QuadParams QuadParams::make(u64 a, u64 b, u64 c, int r) {
  check_r(r, 62);
  const u64 mask = pow2(r) - 1;
  QuadParams p;
  p.r = r;
  p.a = a & mask;
  p.b = b & mask;
  p.c = c & mask;
  p.w = order_in(p.a, 2, r);
  p.h = order_in(p.b, 2, r);
  p.m = std::min(p.w, p.h);
  return p;
}

RestrictedQuad restrict_domain(const QuadParams& p, u64 l, int v) {
  if (v < 0 || v > p.r) throw std::invalid_argument("v must lie in [0, r]");
  const int r = p.r, k = r - v;
  const u64 mask = pow2(r) - 1;
  auto mul = [&](u64 x, u64 y) { return static_cast<u64>((static_cast<u128>(x) * y) & mask); };
  l &= mask;
  const u64 a2 = 2 * k >= r ? 0 : static_cast<u64>((static_cast<u128>(p.a) << (2 * k)) & mask);
  const u64 b2 = mul((mul(2 * p.a, l) + p.b) & mask, pow2(k) & mask);
  const u64 c2 = (mul(mul(p.a, l), l) + mul(p.b, l) + p.c) & mask;
  RestrictedQuad out;
  out.primed = QuadParams::make(a2, b2, c2, r);
  out.k = k;
  out.m_star = out.primed.m - k;
  return out;
}

SliceMultiset image_quadratic(u64 a, u64 b, u64 c, int r) { return image_from_params(QuadParams::make(a, b, c, r), 0); }

SliceMultiset image_quadratic_restricted(u64 a, u64 b, u64 c, int r, u64 l, int v) {
  const RestrictedQuad rq = restrict_domain(QuadParams::make(a, b, c, r), l, v);
  return image_from_params(rq.primed, rq.k);
}

Multiset image_by_enumeration(u64 a, u64 b, u64 c, int r, u64 l, int v) {
  check_r(r, 24);
  if (v < 0 || v > r) throw std::invalid_argument("v must lie in [0, r]");
  const u64 mask = pow2(r) - 1;
  const u64 step = pow2(r - v);
  Multiset out;
  for (u64 j = 0; j < pow2(v); ++j) {
    const u64 x = (l + step * j) & mask;
    ++out[(((a & mask) * x & mask) * x + (b & mask) * x + c) & mask];
  }
  return out;
}

// ---- counting helpers ------------------------------------------------------

u64 count_product_pairs(u64 target, int r) {
  check_r(r, 62);
  target &= pow2(r) - 1;
  if (target == 0) return static_cast<u64>(r + 2) << (r - 1);
  return static_cast<u64>(order_in(target, 2, r) + 1) << (r - 1);
}

SquareFiber square_fiber(int a_exp, u64 k_param, int r) {
  check_r(r, 62);
  if (a_exp < 0 || a_exp > r) throw std::invalid_argument("a must lie in [0, r]");
  // The count does not depend on k.
  (void)k_param;
  SquareFiber out;
  if (2 * a_exp < r) {
    out.count = pow2(std::min(a_exp + 2, r - a_exp - 1));
    out.witness_order = a_exp;
  } else {
    out.count = pow2(r / 2);
  }
  return out;
}

SliceCount slice_count(int f, int m_prime, int k, int r) {
  check_r(r, 62);
  if (!(r > m_prime && m_prime >= k && k >= 0)) throw std::invalid_argument("needs r > m' >= k >= 0");
  if (f < 0 || f > ceil_half(r - m_prime) - 1) throw std::invalid_argument("f must lie in [0, ceil((r-m')/2) - 1]");
  SliceCount out;
  out.closed_form = pow2(r - f - k - 1);
  SliceMultiset s(r);
  add_single_slice(s, f, m_prime, k, r);
  out.materialized = s.total();
  return out;
}

SliceCount cumulative_slice_count(int f_s, int m_prime, int k, int r) {
  check_r(r, 62);
  if (!(r >= m_prime && m_prime >= k && k >= 0)) throw std::invalid_argument("needs r >= m' >= k >= 0");
  if (f_s < 0 || f_s > ceil_half(r - m_prime)) throw std::invalid_argument("f_s must lie in [0, ceil((r-m')/2)]");
  SliceCount out;
  out.closed_form = pow2(r - f_s - k);
  SliceMultiset s(r);
  for (int f = f_s; f < ceil_half(r - m_prime); ++f) add_single_slice(s, f, m_prime, k, r);
  const int tail = (r + m_prime) / 2 - k;
  if (tail < 0) throw std::invalid_argument("parameters give a fractional multiplicity");
  s.add(0, pow2(r), pow2(tail));
  out.materialized = s.total();
  return out;
}

// ---- intersections -------------------------------------------------------

u128 multiplicative_intersection(const Multiset& a, const Multiset& b) {
  const Multiset& small = a.size() <= b.size() ? a : b;
  const Multiset& large = a.size() <= b.size() ? b : a;
  u128 total = 0;
  for (const auto& [value, count] : small) {
    auto it = large.find(value);
    if (it != large.end()) total += static_cast<u128>(count) * it->second;
  }
  return total;
}

IntersectionResult intersection_size(const DomainQuad& p, const DomainQuad& q, int d, int r) {
  check_r(r, 24);
  check_domain(p, r);
  check_domain(q, r);
  if (d < 0 || d > std::min(p.v, q.v)) throw std::invalid_argument("needs d <= min(v, q) <= r");
  const Multiset left = image_by_enumeration(p.a, p.b, p.c, r, p.l, p.v);
  const Multiset base = image_by_enumeration(q.a, q.b, q.c, r, q.l, q.v);
  const u64 mask = pow2(r) - 1;
  Multiset right;
  for (const auto& [value, count] : base)
    for (u64 h = 0; h < pow2(d); ++h) right[(value + (h << (r - d))) & mask] += count;
  IntersectionResult out;
  out.count = multiplicative_intersection(left, right);
  out.divisor = pow2(std::min(p.v, q.v) + d);
  return out;
}

Multiset s_multiset(int e, int v, int r) {
  check_r(r, 24);
  if (v < 0 || v > r || e < 0 || e > v) throw std::invalid_argument("needs 0 <= e <= v <= r");
  const u64 mask = pow2(r) - 1;
  Multiset out;
  for (u64 i = 0; i < pow2(e); ++i) {
    const u64 base = (i << (r - e)) & mask;
    for (int f = 1; f < v; ++f)
      for (u64 s = 0; s < pow2(v - f - 1); ++s) out[(base + ((2 * s + 1) << (r - v + f))) & mask] += static_cast<u64>(f);
    out[base] += static_cast<u64>(v) + 1;
  }
  return out;
}

IntersectionResult intersection_with_S(const DomainQuad& p, int e, int v, int r) {
  check_r(r, 24);
  check_domain(p, r);
  if (v < 0 || v > r) throw std::invalid_argument("v must lie in [0, r]");
  if (e < 0 || e > std::min(p.v, v)) throw std::invalid_argument("needs e <= min(q, v) <= r");
  IntersectionResult out;
  out.count = multiplicative_intersection(s_multiset(e, v, r), image_by_enumeration(p.a, p.b, p.c, r, p.l, p.v));
  out.divisor = pow2(e + std::min({p.v, v, ceil_half(r)}));
  return out;
}

}  // namespace ringcensus
