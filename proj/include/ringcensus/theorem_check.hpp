#pragma once

// Executable divisibility checks: the left-hand sums of the two theorems and
// the corollary, evaluated by definition and by faster table lookups, and
// sweeps that compare them against the closed-form bounds.

#include <optional>
#include <string>
#include <vector>

#include "ringcensus/bounds.hpp"
#include "ringcensus/poly.hpp"

namespace ringcensus {

enum class TheoremKind { Theorem1, Theorem2, Corollary1a, Corollary1b, Corollary1c };

std::string to_string(TheoremKind k);
/// Accepts "1", "2", "c1a", "c1b", "c1c". Throws std::invalid_argument.
TheoremKind parse_theorem_kind(const std::string& s);

struct Sweep {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  u64 seed = 0;
  u64 count = 0;

  static Sweep exhaustive() { return {}; }
  static Sweep sampled(u64 seed, u64 count) { return {Mode::Sampled, seed, count}; }
};

struct CheckOptions {
  /// Every bound is multiplied by this (a sharpness probe uses 2).
  u64 bound_multiplier = 1;
  /// Replaces every bound.
  std::optional<u64> divisor_override;
  unsigned workers = 1;
  u64 budget = default_budget();
  /// Violations kept verbatim; all are counted.
  std::size_t max_recorded = 20;
  /// Stop the sweep once a violation is seen.
  bool stop_at_first = false;
  /// Corollary (c) is only claimed for q <= v; this admits q > v.
  bool allow_q_above_v = false;
};

struct Violation {
  Poly poly;
  std::string params;
  u128 lhs;
  u64 bound;
};

struct CheckReport {
  TheoremKind which = TheoremKind::Theorem1;
  u64 polynomials = 0;
  u64 instances = 0;
  /// Sum of every left-hand side, a reproducibility fingerprint.
  u128 lhs_total = 0;
  u64 violation_count = 0;
  std::vector<Violation> violations;
  std::optional<u64> seed;
  std::string bound_description;

  bool passed() const noexcept { return violation_count == 0; }
};

// ---- Theorem 1 --------------------------------------------------------------

/// Sum over i_j < p_j^{q_j} of #(k + sum_j w_j (m / p_j^{q_j}) i_j). One
/// entry of w and q per prime of m, increasing prime order; q_j <= r_j.
u128 theorem1_lhs(const Poly& q, u64 k, const std::vector<u64>& w, const std::vector<int>& q_exp);

/// Same sum with every term counted by a separate sweep over the domain.
u128 theorem1_lhs_nested(const Poly& q, u64 k, const std::vector<u64>& w, const std::vector<int>& q_exp);

/// Checks theorem1_bound | lhs over k in Z_m, w_j in {0, 1, m-1} and every
/// q. Exhaustive mode takes every constant-free polynomial with every k,
/// which covers every constant as well.
CheckReport verify_theorem1(u64 m, int n, int d, const Sweep& sweep, const CheckOptions& options = {});

// ---- Theorem 2 and the corollary --------------------------------------------

struct Theorem2Params {
  AffineForm t;
  u64 k = 0;
  u64 w = 0;
  u64 g = 0;
  u64 u = 0;
  int q = 0;
  int v = 0;
};

std::string describe(const Theorem2Params& p);

/// Sum over i < 2^q, j < 2^v of #(k + w 2^{r-q} i + g 2^{r-v} j) for Q with
/// z = T(x) + u 2^{r-v} j, each term by count_constrained. Requires m = 2^r,
/// n >= 3, degree bound <= 2 and 0 <= q, v <= r.
u128 theorem2_lhs(const Poly& q, const Theorem2Params& p);

struct Corollary1Params {
  /// Constant value of z's base point.
  u64 l = 0;
  u64 k = 0;
  u64 w = 0;
  u64 g = 0;
  int q = 0;
  int v = 0;
};

std::string describe(const Corollary1Params& p);

/// (a) sum_j #k with z = l + g 2^{r-v} j
/// (b) sum_{i,j} #(k + w 2^{r-q} i) with z = l + g 2^{r-v} j
/// (c) sum_j #(k + w 2^{r-q} j) with z = l + g 2^{r-v} j
u128 corollary1_lhs(Corollary1Variant variant, const Poly& q, const Corollary1Params& p);

/// Fibers of Q(x, T(x) + s) for every shift s, from a single pass over x.
/// Write Q = A(x) + z L(x) + c z^2; then Q(x, T + s) = F(x) + s G(x) + c s^2
/// with F = Q(x, T(x)) and G = L + 2cT.
class ShiftedFibers {
 public:
  ShiftedFibers(const Poly& q, const AffineForm& t);

  /// #{x : Q(x, T(x) + s) = target}.
  u64 count(u64 s, u64 target) const { return table_[(s % m_) * m_ + target % m_]; }
  /// Sum of count(s, target + step * i) for i < reps.
  u64 progression(u64 s, u64 target, u64 step, u64 reps) const;

  u128 theorem2_lhs(const Theorem2Params& p, int r) const;
  u128 corollary1_lhs(Corollary1Variant variant, const Corollary1Params& p, int r) const;

 private:
  u64 m_;
  std::vector<u64> table_;
};

/// Sweeps T over affine forms with coefficients in {0, 1} and every
/// constant, k over Z_m, w, g, u over {0, 1, m-1}, q and v over [0, r],
/// skipping parameters that cannot affect the sum (w when q = 0, g and u
/// when v = 0). Only polynomials of degree <= 2 over Z_{2^r}.
CheckReport verify_theorem2(int r, int n, const Sweep& sweep, const CheckOptions& options = {});

/// The corollary's sums over l in Z_m, k, w, g in {0, 1, m-1}, q, v in [0, r]
/// (q <= v for variant C unless allow_q_above_v).
CheckReport verify_corollary1(Corollary1Variant variant, int r, int n, const Sweep& sweep,
                              const CheckOptions& options = {});

}  // namespace ringcensus
