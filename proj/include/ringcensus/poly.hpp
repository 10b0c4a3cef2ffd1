#pragma once

// Dense polynomials of degree <= 3 over Z_m in a fixed monomial order,
// point evaluation, full-domain value histograms, substitution of the last
// variable by an affine form, and the odometer over coefficient vectors.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringcensus/budget.hpp"
#include "ringcensus/ring.hpp"

namespace ringcensus {

inline constexpr int kMaxDegree = 3;

/// Sorted variable-index tuple: (i) linear, (i,j) with i<=j, (i,j,k) with i<=j<=k.
struct Monomial {
  std::array<int, kMaxDegree> vars{};
  int degree = 0;

  std::span<const int> indices() const noexcept { return {vars.data(), static_cast<std::size_t>(degree)}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Number of non-constant monomials: n + [d>=2] n(n+1)/2 + [d>=3] n(n+1)(n+2)/6.
std::size_t coef_count(int n_vars, int degree_bound);

/// The canonical order: all linear terms by variable, then quadratic pairs
/// in nested-loop order, then cubic triples in nested-loop order.
///
/// For n=3, d=3 the indices are
///   0..2   x0 x1 x2
///   3..8   x0x0 x0x1 x0x2 x1x1 x1x2 x2x2
///   9..18  x0x0x0 x0x0x1 x0x0x2 x0x1x1 x0x1x2 x0x2x2 x1x1x1 x1x1x2 x1x2x2 x2x2x2
const std::vector<Monomial>& canonical_monomials(int n_vars, int degree_bound);

class Poly {
 public:
  /// The zero polynomial. Throws std::invalid_argument unless n >= 1 and 1 <= d <= 3.
  Poly(RingSpec ring, int n_vars, int degree_bound);
  Poly(RingSpec ring, int n_vars, int degree_bound, std::span<const u64> coeffs, u64 constant = 0);

  const RingSpec& ring() const noexcept { return ring_; }
  u64 modulus() const noexcept { return ring_.modulus(); }
  int n_vars() const noexcept { return n_vars_; }
  int degree_bound() const noexcept { return degree_bound_; }
  std::span<const u64> coeffs() const noexcept { return coeffs_; }
  u64 constant() const noexcept { return constant_; }
  const std::vector<Monomial>& monomials() const { return canonical_monomials(n_vars_, degree_bound_); }

  void set_coeff(std::size_t index, i64 value);
  /// Sets the coefficient of the monomial with the given (unsorted) variable indices.
  void set_term(std::span<const int> vars, i64 value);
  u64 term(std::span<const int> vars) const;
  void set_constant(i64 value) { constant_ = ring_.reduce(value); }

  /// Highest degree with a nonzero coefficient (0 for constants).
  int actual_degree() const noexcept;

  u64 evaluate_raw(std::span<const u64> point) const;
  /// Throws std::invalid_argument on a dimension or ring mismatch.
  RingElem evaluate(std::span<const RingElem> point) const;

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.ring_ == b.ring_ && a.n_vars_ == b.n_vars_ && a.degree_bound_ == b.degree_bound_ &&
           a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
  }

 private:
  std::size_t index_of(std::span<const int> vars) const;

  RingSpec ring_;
  int n_vars_;
  int degree_bound_;
  std::vector<u64> coeffs_;
  u64 constant_ = 0;
};

/// counts[v] = #{x : P(x) = v}.
struct ValueHistogram {
  std::vector<u64> counts;

  u64 total() const noexcept;
};

/// Histogram of P over Z_m^n. Throws BudgetExceeded("domain too large")
/// when m^n exceeds the budget.
ValueHistogram value_histogram(const Poly& p, u64 budget = default_budget());

/// Histogram of P over D^n where D is a set of residues (e.g. {0,1}).
ValueHistogram value_histogram_on(const Poly& p, std::span<const u64> axis_values, u64 budget = default_budget());

/// #{x in Z_m^n : P(x) = k}.
u64 count_solutions(const Poly& p, u64 k, u64 budget = default_budget());

/// Affine form over the variables of a polynomial; the coefficient of the
/// last variable must be zero when used for substitution.
struct AffineForm {
  std::vector<u64> coeffs;
  u64 constant = 0;

  static AffineForm zero(int n_vars) { return {std::vector<u64>(static_cast<std::size_t>(n_vars), 0), 0}; }
};

/// Histogram over x in Z_m^{n-1} of Q(x, T(x)), z being the last variable.
/// Throws std::invalid_argument("affine form references z") if T uses z.
ValueHistogram constrained_histogram(const Poly& q, const AffineForm& t, u64 budget = default_budget());

/// #{x : Q(x, T(x)) = target}.
u64 count_constrained(const Poly& q, const AffineForm& t, u64 target, u64 budget = default_budget());

/// The (n-1)-variable polynomial Q(x, T(x)) obtained symbolically.
Poly substitute_last(const Poly& q, const AffineForm& t);

/// P + c.
Poly shift_constant(const Poly& p, i64 c);

/// Odometer over coefficient vectors with the constant fixed at zero, last
/// index fastest. Mirrors the reference enumeration: the first call to
/// next() yields the all-zero vector and next() returns false once every
/// vector has been produced. A stream may be restricted to a contiguous
/// index range [begin, end) of the full m^C sequence.
class CoefficientStream {
 public:
  CoefficientStream(RingSpec ring, int n_vars, int degree_bound);
  CoefficientStream(RingSpec ring, int n_vars, int degree_bound, u64 begin, u64 end);

  bool next();
  std::span<const u64> digits() const noexcept { return digits_; }
  Poly current() const;
  /// Index of the current vector in the full sequence.
  u64 index() const noexcept { return index_; }
  /// m^C, saturating at UINT64_MAX.
  u64 total() const noexcept { return total_; }

 private:
  RingSpec ring_;
  int n_vars_;
  int degree_bound_;
  std::vector<u64> digits_;
  u64 begin_;
  u64 end_;
  u64 index_;
  u64 total_;
  bool started_ = false;
};

/// Digits of index in base m, most significant first, padded to `width`.
std::vector<u64> index_to_digits(u64 index, u64 m, std::size_t width);

/// "poly mod 8: 1 + 2*x1 + x1*x2"; variables are 1-based, squares print as x1*x1.
std::string to_string(const Poly& p);

/// Parses the format produced by to_string. Also accepts "x1^2", "-" terms
/// and repeated monomials (which are summed). When n_vars / degree_bound are
/// omitted they are inferred (largest variable index, largest term degree,
/// at least 1). Throws std::invalid_argument on malformed input.
Poly parse_poly(std::string_view text, std::optional<int> n_vars = std::nullopt,
                std::optional<int> degree_bound = std::nullopt);

}  // namespace ringcensus
