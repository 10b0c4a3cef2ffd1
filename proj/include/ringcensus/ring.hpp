#pragma once

// Arithmetic in Z_m: ring descriptors, elements, element orders, unit
// inverses and Hensel lifting over prime-power rings.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringcensus {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest supported modulus. Products of two residues fit in 64 bits.
inline constexpr u64 kMaxModulus = u64{1} << 31;

struct PrimePower {
  u64 prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// The ring Z_m together with the cached factorization of m.
///
/// Cheap to copy (the factorization is shared) and immutable after
/// construction, so a single instance may be read from many threads.
class RingSpec {
 public:
  /// Throws std::invalid_argument unless 2 <= modulus <= 2^31.
  explicit RingSpec(u64 modulus);

  u64 modulus() const noexcept { return modulus_; }
  std::span<const PrimePower> factorization() const noexcept { return *factors_; }

  bool is_prime_power() const noexcept { return factors_->size() == 1; }
  bool is_prime() const noexcept { return is_prime_power() && (*factors_)[0].exponent == 1; }
  /// Product of the distinct primes dividing m.
  u64 radical() const noexcept;

  u64 reduce(i64 x) const noexcept {
    i64 m = static_cast<i64>(modulus_);
    i64 r = x % m;
    return static_cast<u64>(r < 0 ? r + m : r);
  }
  u64 reduce_u(u64 x) const noexcept { return x % modulus_; }
  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + modulus_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : modulus_ - a; }
  u64 mul(u64 a, u64 b) const noexcept { return (a * b) % modulus_; }
  u64 pow(u64 base, u64 exp) const noexcept;

  friend bool operator==(const RingSpec& a, const RingSpec& b) noexcept {
    return a.modulus_ == b.modulus_;
  }

 private:
  u64 modulus_;
  std::shared_ptr<const std::vector<PrimePower>> factors_;
};

/// An element of Z_m. The value is always reduced into [0, m).
class RingElem {
 public:
  RingElem(RingSpec ring, i64 value) : ring_(std::move(ring)), value_(ring_.reduce(value)) {}
  static RingElem from_unsigned(RingSpec ring, u64 value) {
    RingElem e(std::move(ring), 0);
    e.value_ = value % e.ring_.modulus();
    return e;
  }

  u64 value() const noexcept { return value_; }
  const RingSpec& ring() const noexcept { return ring_; }

  RingElem operator+(const RingElem& o) const { return from_unsigned(ring_, ring_.add(value_, check(o))); }
  RingElem operator-(const RingElem& o) const { return from_unsigned(ring_, ring_.sub(value_, check(o))); }
  RingElem operator*(const RingElem& o) const { return from_unsigned(ring_, ring_.mul(value_, check(o))); }
  RingElem operator-() const { return from_unsigned(ring_, ring_.neg(value_)); }

  friend bool operator==(const RingElem& a, const RingElem& b) noexcept {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

 private:
  u64 check(const RingElem& o) const {
    if (!(o.ring_ == ring_)) throw std::invalid_argument("ring mismatch");
    return o.value_;
  }

  RingSpec ring_;
  u64 value_;
};

// ---- small integer helpers -------------------------------------------------

u64 gcd_u64(u64 a, u64 b) noexcept;
/// b^e, throws std::overflow_error when the result exceeds 64 bits.
u64 ipow(u64 base, u64 exp);
/// Same as ipow but saturates at UINT64_MAX.
u64 ipow_saturating(u64 base, u64 exp) noexcept;
constexpr u64 ceil_div(u64 a, u64 b) noexcept { return (a + b - 1) / b; }
bool is_prime(u64 n) noexcept;
std::vector<PrimePower> factorize(u64 n);
/// Exponent of p in x (x > 0).
int valuation(u64 x, u64 p) noexcept;
/// x^{-1} mod m, throws std::domain_error("not a unit") when gcd(x, m) != 1.
u64 inverse_mod(u64 x, u64 m);

// ---- element order ----------------------------------------------------------

/// Largest e <= r with p^e | x, over Z_{p^r}. order(0) = r.
/// Throws std::domain_error("order requires local ring") otherwise.
int order(const RingElem& x);
/// Raw form used in hot loops: order of x over Z_{p^r}.
int order_in(u64 x, u64 p, int r) noexcept;

/// y with x*y = 1. Throws std::domain_error("not a unit").
RingElem unit_inverse(const RingElem& x);

// ---- Hensel lifting ---------------------------------------------------------

/// Dense univariate polynomial c0 + c1 x + ... over Z_m.
class UniPoly {
 public:
  UniPoly(RingSpec ring, std::vector<i64> coeffs);

  const RingSpec& ring() const noexcept { return ring_; }
  std::span<const u64> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept;

  u64 eval(u64 x) const noexcept;
  /// Evaluates with the coefficients reduced into a smaller modulus dividing m.
  u64 eval_mod(u64 x, u64 modulus) const noexcept;
  UniPoly derivative() const;

 private:
  RingSpec ring_;
  std::vector<u64> coeffs_;
};

/// Lifts a simple root u of f mod p^r to the unique root v mod p^{r'} with
/// v = u mod p^r. f lives over Z_{p^{r'}}; requires r < r' <= 2r.
///
/// Errors: std::invalid_argument on bad exponents or non-prime-power ring,
/// std::domain_error("not a root") if f(u) != 0 mod p^r,
/// std::domain_error("non-simple root") if f'(u) = 0 mod p.
RingElem hensel_lift(const UniPoly& f, u64 root, int r, int r_prime);

}  // namespace ringcensus
