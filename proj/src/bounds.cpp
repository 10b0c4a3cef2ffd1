#include "ringcensus/bounds.hpp"

namespace ringcensus {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Ax: return "ax";
    case BoundKind::MarshallRamage: return "marshall-ramage";
    case BoundKind::Theorem1: return "theorem1";
    case BoundKind::Theorem2: return "theorem2";
    case BoundKind::Corollary1a: return "corollary1a";
    case BoundKind::Corollary1b: return "corollary1b";
    case BoundKind::Corollary1c: return "corollary1c";
  }
  return "?";
}

namespace {

std::string s(i64 x) { return std::to_string(x); }

std::string power_term(u64 p, const std::string& exponent_expr, u64 exponent) {
  return s(static_cast<i64>(p)) + "^(" + exponent_expr + "=" + s(static_cast<i64>(exponent)) + ")";
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Shared product for the Marshall-Ramage family with per-prime extras.
DivisibilityBound prime_product(const RingSpec& ring, int n, int d, const std::vector<int>& extra, BoundKind kind) {
  DivisibilityBound b;
  b.provenance = kind;
  b.params = {{"m", s(static_cast<i64>(ring.modulus()))}, {"n", s(n)}, {"d", s(d)}};
  u64 value = 1;
  std::string formula;
  const auto f = ring.factorization();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const u64 p = f[i].prime;
    const int r = f[i].exponent;
    const int q = extra.empty() ? 0 : extra[i];
    std::string expr;
    u64 e;
    if (r == 1) {
      e = ceil_div(static_cast<u64>(n), static_cast<u64>(d)) - 1;
      expr = "ceil(" + s(n) + "/" + s(d) + ")-1";
    } else {
      e = ceil_div(static_cast<u64>(r) * static_cast<u64>(n), 2) - 1;
      expr = "ceil(" + s(r) + "*" + s(n) + "/2)-1";
    }
    if (q) {
      e += static_cast<u64>(q);
      expr += "+" + s(q);
    }
    value *= ipow(p, e);
    if (!formula.empty()) formula += " * ";
    formula += power_term(p, expr, e);
  }
  b.value = value;
  b.formula = formula + " = " + s(static_cast<i64>(value));
  return b;
}

u64 theorem2_exponent_base(int r, int n, int v) {
  return ceil_div(static_cast<u64>(r) * static_cast<u64>(n - 1) + static_cast<u64>(std::min(2 * v, r)), 2);
}

std::string theorem2_expr(int r, int n, int v) {
  return "ceil((" + s(r) + "*" + s(n - 1) + "+min(" + s(2 * v) + "," + s(r) + "))/2)";
}

void check_theorem2(int r, int n, int q, int v) {
  require(r >= 1, "r must be at least 1");
  require(n >= 3, "the bound needs n >= 3");
  require(q >= 0 && q <= r, "q must lie in [0, r]");
  require(v >= 0 && v <= r, "v must lie in [0, r]");
}

}  // namespace

DivisibilityBound ax_bound(u64 p, int r, int n, int d) {
  require(d >= 1, "degree must be at least 1");
  require(n >= 1, "n must be at least 1");
  require(r >= 1, "r must be at least 1");
  require(is_prime(p), "p must be prime");
  const u64 e = static_cast<u64>(r) * (ceil_div(static_cast<u64>(n), static_cast<u64>(d)) - 1);
  DivisibilityBound b;
  b.provenance = BoundKind::Ax;
  b.params = {{"p", s(static_cast<i64>(p))}, {"r", s(r)}, {"n", s(n)}, {"d", s(d)}};
  b.value = ipow(p, e);
  b.formula = power_term(p, s(r) + "*(ceil(" + s(n) + "/" + s(d) + ")-1)", e) + " = " + s(static_cast<i64>(b.value));
  return b;
}

DivisibilityBound marshall_ramage_bound(const RingSpec& ring, int n, int d) {
  require(d >= 1, "degree must be at least 1");
  require(n >= 1, "n must be at least 1");
  if (n == 1) {
    DivisibilityBound b;
    b.provenance = BoundKind::MarshallRamage;
    b.params = {{"m", s(static_cast<i64>(ring.modulus()))}, {"n", "1"}, {"d", s(d)}};
    b.value = 1;
    b.formula = "1 (single variable)";
    return b;
  }
  return prime_product(ring, n, d, {}, BoundKind::MarshallRamage);
}

DivisibilityBound theorem1_bound(const RingSpec& ring, int n, int d, const std::vector<int>& q) {
  require(d >= 1, "degree must be at least 1");
  require(n >= 2, "the bound needs n >= 2");
  const auto f = ring.factorization();
  require(q.size() == f.size(), "q needs one entry per prime factor of m");
  std::string qs;
  for (std::size_t i = 0; i < q.size(); ++i) {
    require(q[i] >= 0, "q_i must be non-negative");
    if (q[i] > f[i].exponent) throw std::invalid_argument("q_i exceeds r_i");
    qs += (i ? "," : "") + s(q[i]);
  }
  DivisibilityBound b = prime_product(ring, n, d, q, BoundKind::Theorem1);
  b.params.emplace_back("q", "(" + qs + ")");
  return b;
}

DivisibilityBound theorem2_bound(int r, int n, int q, int v) {
  check_theorem2(r, n, q, v);
  const u64 e = theorem2_exponent_base(r, n, v) + static_cast<u64>(q) - 1;
  DivisibilityBound b;
  b.provenance = BoundKind::Theorem2;
  b.params = {{"r", s(r)}, {"n", s(n)}, {"q", s(q)}, {"v", s(v)}};
  b.value = ipow(2, e);
  b.formula = power_term(2, theorem2_expr(r, n, v) + "+" + s(q) + "-1", e) + " = " + s(static_cast<i64>(b.value));
  return b;
}

DivisibilityBound corollary1_bound(Corollary1Variant variant, int r, int n, int q, int v) {
  if (variant == Corollary1Variant::B) {
    DivisibilityBound b = theorem2_bound(r, n, q, v);
    b.provenance = BoundKind::Corollary1b;
    return b;
  }
  check_theorem2(r, n, q, v);
  const u64 e = theorem2_exponent_base(r, n, v) - 1;
  DivisibilityBound b;
  b.provenance = variant == Corollary1Variant::A ? BoundKind::Corollary1a : BoundKind::Corollary1c;
  b.params = {{"r", s(r)}, {"n", s(n)}, {"q", s(q)}, {"v", s(v)}};
  b.value = ipow(2, e);
  b.formula = power_term(2, theorem2_expr(r, n, v) + "-1", e) + " = " + s(static_cast<i64>(b.value));
  return b;
}

}  // namespace ringcensus
