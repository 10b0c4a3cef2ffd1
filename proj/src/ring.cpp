#include "ringcensus/ring.hpp"

#include <limits>
#include <numeric>

namespace ringcensus {

RingSpec::RingSpec(u64 modulus) : modulus_(modulus) {
  if (modulus < 2 || modulus > kMaxModulus)
    throw std::invalid_argument("modulus must lie in [2, 2^31], got " + std::to_string(modulus));
  factors_ = std::make_shared<const std::vector<PrimePower>>(factorize(modulus));
}

u64 RingSpec::radical() const noexcept {
  u64 r = 1;
  for (const auto& pp : *factors_) r *= pp.prime;
  return r;
}

u64 RingSpec::pow(u64 base, u64 exp) const noexcept {
  u64 result = 1 % modulus_;
  base %= modulus_;
  while (exp) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

u64 gcd_u64(u64 a, u64 b) noexcept { return std::gcd(a, b); }

u64 ipow(u64 base, u64 exp) {
  u64 result = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<u64>::max() / base)
      throw std::overflow_error("integer power overflows 64 bits");
    result *= base;
  }
  return result;
}

u64 ipow_saturating(u64 base, u64 exp) noexcept {
  u64 result = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<u64>::max() / base)
      return std::numeric_limits<u64>::max();
    result *= base;
  }
  return result;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

int valuation(u64 x, u64 p) noexcept {
  int e = 0;
  while (x && x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

u64 inverse_mod(u64 x, u64 m) {
  i64 old_r = static_cast<i64>(x % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("not a unit");
  i64 mm = static_cast<i64>(m);
  i64 inv = old_s % mm;
  if (inv < 0) inv += mm;
  return static_cast<u64>(inv) % m;
}

int order_in(u64 x, u64 p, int r) noexcept {
  if (x == 0) return r;
  int e = valuation(x, p);
  return e < r ? e : r;
}

int order(const RingElem& x) {
  const RingSpec& ring = x.ring();
  if (!ring.is_prime_power()) throw std::domain_error("order requires local ring");
  const PrimePower pp = ring.factorization()[0];
  return order_in(x.value(), pp.prime, pp.exponent);
}

RingElem unit_inverse(const RingElem& x) {
  return RingElem::from_unsigned(x.ring(), inverse_mod(x.value(), x.ring().modulus()));
}

UniPoly::UniPoly(RingSpec ring, std::vector<i64> coeffs) : ring_(std::move(ring)) {
  coeffs_.reserve(coeffs.size());
  for (i64 c : coeffs) coeffs_.push_back(ring_.reduce(c));
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0);
}

int UniPoly::degree() const noexcept {
  if (coeffs_.size() == 1 && coeffs_[0] == 0) return -1;
  return static_cast<int>(coeffs_.size()) - 1;
}

u64 UniPoly::eval(u64 x) const noexcept { return eval_mod(x, ring_.modulus()); }

u64 UniPoly::eval_mod(u64 x, u64 modulus) const noexcept {
  x %= modulus;
  u64 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x + *it) % modulus;
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<i64> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d.push_back(static_cast<i64>(ring_.mul(coeffs_[i], i % ring_.modulus())));
  if (d.empty()) d.push_back(0);
  return UniPoly(ring_, std::move(d));
}

RingElem hensel_lift(const UniPoly& f, u64 root, int r, int r_prime) {
  const RingSpec& ring = f.ring();
  if (!ring.is_prime_power()) throw std::invalid_argument("hensel_lift requires a prime-power ring");
  const PrimePower pp = ring.factorization()[0];
  if (pp.exponent != r_prime) throw std::invalid_argument("ring exponent does not match r'");
  if (r < 1 || r_prime <= r || r_prime > 2 * r)
    throw std::invalid_argument("hensel_lift requires 1 <= r < r' <= 2r");

  const u64 low = ipow(pp.prime, static_cast<u64>(r));
  root %= low;
  if (f.eval_mod(root, low) != 0) throw std::domain_error("not a root");
  const u64 slope = f.derivative().eval_mod(root, pp.prime);
  if (slope == 0) throw std::domain_error("non-simple root");

  // One Newton step doubles the precision, which covers r' <= 2r.
  const u64 fu = f.eval(root);
  const u64 inv = inverse_mod(f.derivative().eval(root), ring.modulus());
  return RingElem::from_unsigned(ring, ring.sub(root, ring.mul(fu, inv)));
}

}  // namespace ringcensus
