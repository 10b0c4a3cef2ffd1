#include "ringcensus/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>

namespace ringcensus {

namespace {

void check_shape(int n_vars, int degree_bound) {
  if (n_vars < 1) throw std::invalid_argument("polynomial needs at least one variable");
  if (degree_bound < 1 || degree_bound > kMaxDegree)
    throw std::invalid_argument("degree bound must be 1, 2 or 3");
}

std::vector<Monomial> build_monomials(int n, int d) {
  std::vector<Monomial> out;
  out.reserve(coef_count(n, d));
  for (int i = 0; i < n; ++i) out.push_back({{i, 0, 0}, 1});
  if (d >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out.push_back({{i, j, 0}, 2});
  if (d >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) out.push_back({{i, j, k}, 3});
  return out;
}

// Exponent-vector bases used by the sweep. Level k covers k variables; the
// first of them is specialized when stepping down to level k-1.
struct SweepLevel {
  std::vector<int> first_exp;
  std::vector<int> rest_index;
  std::size_t size = 0;
};

struct SweepPlan {
  int n = 0;
  int d = 0;
  std::vector<SweepLevel> levels;   // index k = number of variables, 1..n
  std::vector<int> entry_index;     // canonical monomial -> index in level n
};

void exponent_vectors(int k, int budget, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    cur.push_back(e);
    exponent_vectors(k, budget - e, cur, out);
    cur.pop_back();
  }
}

std::shared_ptr<const SweepPlan> build_plan(int n, int d) {
  auto plan = std::make_shared<SweepPlan>();
  plan->n = n;
  plan->d = d;
  plan->levels.resize(static_cast<std::size_t>(n) + 1);
  std::vector<std::map<std::vector<int>, int>> lookup(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<int>> vecs;
    std::vector<int> cur;
    exponent_vectors(k, d, cur, vecs);
    SweepLevel& level = plan->levels[static_cast<std::size_t>(k)];
    level.size = vecs.size();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      lookup[static_cast<std::size_t>(k)][vecs[i]] = static_cast<int>(i);
      level.first_exp.push_back(vecs[i][0]);
      if (k == 1) {
        level.rest_index.push_back(0);
      } else {
        std::vector<int> rest(vecs[i].begin() + 1, vecs[i].end());
        level.rest_index.push_back(lookup[static_cast<std::size_t>(k) - 1].at(rest));
      }
    }
  }
  for (const Monomial& mono : canonical_monomials(n, d)) {
    std::vector<int> exps(static_cast<std::size_t>(n), 0);
    for (int v : mono.indices()) ++exps[static_cast<std::size_t>(n - 1 - v)];
    // Level n's first variable is the original last variable, so the
    // innermost (univariate) level handles variable 0.
    plan->entry_index.push_back(lookup[static_cast<std::size_t>(n)].at(exps));
  }
  return plan;
}

std::shared_ptr<const SweepPlan> sweep_plan(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const SweepPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot = build_plan(n, d);
  return slot;
}

// Specializes one variable at a time over the axis values, reducing the
// coefficient vector until a univariate polynomial remains.
template <bool Wide>
class Sweeper {
 public:
  Sweeper(const SweepPlan& plan, u64 m, std::span<const u64> axis, std::vector<u64>& hist)
      : plan_(plan), m_(m), axis_(axis), hist_(hist) {
    const std::size_t stride = static_cast<std::size_t>(plan.d) + 1;
    pw_.resize(axis.size() * stride);
    for (std::size_t t = 0; t < axis.size(); ++t) {
      u64 acc = 1 % m;
      for (std::size_t e = 0; e < stride; ++e) {
        pw_[t * stride + e] = acc;
        acc = (acc * (axis[t] % m)) % m;
      }
    }
    buffers_.resize(static_cast<std::size_t>(plan.n) + 1);
    for (int k = 1; k <= plan.n; ++k) buffers_[static_cast<std::size_t>(k)].resize(plan.levels[static_cast<std::size_t>(k)].size);
  }

  void run(const std::vector<u64>& top) { sweep(plan_.n, top.data()); }

 private:
  u64 term(u64 c, u64 p) const { return Wide ? (c * p) % m_ : c * p; }

  void sweep(int k, const u64* coeffs) {
    const std::size_t stride = static_cast<std::size_t>(plan_.d) + 1;
    if (k == 1) {
      for (std::size_t t = 0; t < axis_.size(); ++t) {
        const u64* pw = &pw_[t * stride];
        u64 v = 0;
        for (std::size_t e = 0; e < stride; ++e) v += term(coeffs[e], pw[e]);
        ++hist_[v % m_];
      }
      return;
    }
    const SweepLevel& level = plan_.levels[static_cast<std::size_t>(k)];
    std::vector<u64>& out = buffers_[static_cast<std::size_t>(k) - 1];
    for (std::size_t t = 0; t < axis_.size(); ++t) {
      const u64* pw = &pw_[t * stride];
      std::fill(out.begin(), out.end(), 0);
      for (std::size_t i = 0; i < level.size; ++i)
        out[static_cast<std::size_t>(level.rest_index[i])] += term(coeffs[i], pw[level.first_exp[i]]);
      for (u64& c : out) c %= m_;
      sweep(k - 1, out.data());
    }
  }

  const SweepPlan& plan_;
  u64 m_;
  std::span<const u64> axis_;
  std::vector<u64>& hist_;
  std::vector<u64> pw_;
  std::vector<std::vector<u64>> buffers_;
};

long double domain_size(std::size_t axis, int n) {
  long double s = 1;
  for (int i = 0; i < n; ++i) s *= static_cast<long double>(axis);
  return s;
}

}  // namespace

std::size_t coef_count(int n, int d) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::size_t c = nn;
  if (d >= 2) c += nn * (nn + 1) / 2;
  if (d >= 3) c += nn * (nn + 1) * (nn + 2) / 6;
  return c;
}

const std::vector<Monomial>& canonical_monomials(int n, int d) {
  check_shape(n, d);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<Monomial>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_unique<const std::vector<Monomial>>(build_monomials(n, d));
  return *slot;
}

Poly::Poly(RingSpec ring, int n_vars, int degree_bound)
    : ring_(std::move(ring)), n_vars_(n_vars), degree_bound_(degree_bound) {
  check_shape(n_vars, degree_bound);
  coeffs_.assign(coef_count(n_vars, degree_bound), 0);
}

Poly::Poly(RingSpec ring, int n_vars, int degree_bound, std::span<const u64> coeffs, u64 constant)
    : Poly(std::move(ring), n_vars, degree_bound) {
  if (coeffs.size() != coeffs_.size())
    throw std::invalid_argument("expected " + std::to_string(coeffs_.size()) + " coefficients, got " +
                                std::to_string(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i] = ring_.reduce_u(coeffs[i]);
  constant_ = ring_.reduce_u(constant);
}

void Poly::set_coeff(std::size_t index, i64 value) {
  if (index >= coeffs_.size()) throw std::out_of_range("coefficient index out of range");
  coeffs_[index] = ring_.reduce(value);
}

std::size_t Poly::index_of(std::span<const int> vars) const {
  std::array<int, kMaxDegree> sorted{};
  if (vars.empty() || vars.size() > static_cast<std::size_t>(degree_bound_))
    throw std::invalid_argument("monomial degree outside 1.." + std::to_string(degree_bound_));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 0 || vars[i] >= n_vars_) throw std::invalid_argument("variable index out of range");
    sorted[i] = vars[i];
  }
  std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(vars.size()));
  const Monomial key{sorted, static_cast<int>(vars.size())};
  const auto& monos = monomials();
  const auto it = std::find(monos.begin(), monos.end(), key);
  return static_cast<std::size_t>(it - monos.begin());
}

void Poly::set_term(std::span<const int> vars, i64 value) { coeffs_[index_of(vars)] = ring_.reduce(value); }

u64 Poly::term(std::span<const int> vars) const { return coeffs_[index_of(vars)]; }

int Poly::actual_degree() const noexcept {
  const auto& monos = monomials();
  int deg = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) deg = std::max(deg, monos[i].degree);
  return deg;
}

u64 Poly::evaluate_raw(std::span<const u64> point) const {
  if (point.size() != static_cast<std::size_t>(n_vars_))
    throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, expected " +
                                std::to_string(n_vars_));
  const u64 m = ring_.modulus();
  const auto& monos = monomials();
  u64 acc = constant_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    u64 t = coeffs_[i];
    for (int v : monos[i].indices()) t = (t * (point[static_cast<std::size_t>(v)] % m)) % m;
    acc = ring_.add(acc, t);
  }
  return acc;
}

RingElem Poly::evaluate(std::span<const RingElem> point) const {
  std::vector<u64> raw;
  raw.reserve(point.size());
  for (const RingElem& e : point) {
    if (!(e.ring() == ring_)) throw std::invalid_argument("ring mismatch");
    raw.push_back(e.value());
  }
  return RingElem::from_unsigned(ring_, evaluate_raw(raw));
}

u64 ValueHistogram::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), u64{0}); }

ValueHistogram value_histogram_on(const Poly& p, std::span<const u64> axis_values, u64 budget) {
  const long double size = domain_size(axis_values.size(), p.n_vars());
  if (size > static_cast<long double>(budget)) throw BudgetExceeded("domain too large", size, budget);
  const u64 m = p.modulus();
  ValueHistogram h;
  h.counts.assign(m, 0);
  if (axis_values.empty()) return h;

  const auto plan = sweep_plan(p.n_vars(), p.degree_bound());
  std::vector<u64> top(plan->levels[static_cast<std::size_t>(p.n_vars())].size, 0);
  top[0] = p.constant();  // the all-zero exponent vector is first
  const auto coeffs = p.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) top[static_cast<std::size_t>(plan->entry_index[i])] = coeffs[i];

  if (m <= (u64{1} << 16)) {
    Sweeper<false>(*plan, m, axis_values, h.counts).run(top);
  } else {
    Sweeper<true>(*plan, m, axis_values, h.counts).run(top);
  }
  return h;
}

ValueHistogram value_histogram(const Poly& p, u64 budget) {
  const long double size = domain_size(p.modulus(), p.n_vars());
  if (size > static_cast<long double>(budget)) throw BudgetExceeded("domain too large", size, budget);
  std::vector<u64> axis(p.modulus());
  std::iota(axis.begin(), axis.end(), u64{0});
  return value_histogram_on(p, axis, budget);
}

u64 count_solutions(const Poly& p, u64 k, u64 budget) {
  return value_histogram(p, budget).counts[p.ring().reduce_u(k)];
}

namespace {

void check_affine(const Poly& q, const AffineForm& t) {
  if (t.coeffs.size() != static_cast<std::size_t>(q.n_vars()))
    throw std::invalid_argument("affine form must list one coefficient per variable");
  if (q.ring().reduce_u(t.coeffs.back()) != 0) throw std::invalid_argument("affine form references z");
}

}  // namespace

ValueHistogram constrained_histogram(const Poly& q, const AffineForm& t, u64 budget) {
  check_affine(q, t);
  const u64 m = q.modulus();
  const std::size_t free_vars = static_cast<std::size_t>(q.n_vars()) - 1;
  const long double size = domain_size(m, static_cast<int>(free_vars));
  if (size > static_cast<long double>(budget)) throw BudgetExceeded("domain too large", size, budget);

  ValueHistogram h;
  h.counts.assign(m, 0);
  std::vector<u64> point(free_vars + 1, 0);
  while (true) {
    u64 z = t.constant % m;
    for (std::size_t i = 0; i < free_vars; ++i) z = (z + (t.coeffs[i] % m) * point[i]) % m;
    point[free_vars] = z;
    ++h.counts[q.evaluate_raw(point)];
    std::size_t i = free_vars;
    while (i > 0) {
      --i;
      if (++point[i] < m) break;
      point[i] = 0;
      if (i == 0) return h;
    }
    if (free_vars == 0) return h;
  }
}

u64 count_constrained(const Poly& q, const AffineForm& t, u64 target, u64 budget) {
  return constrained_histogram(q, t, budget).counts[q.ring().reduce_u(target)];
}

namespace {

using Sparse = std::map<std::vector<int>, u64>;

Sparse multiply(const Sparse& a, const Sparse& b, const RingSpec& ring) {
  Sparse out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      std::vector<int> key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      std::sort(key.begin(), key.end());
      u64& slot = out[key];
      slot = ring.add(slot, ring.mul(ca, cb));
    }
  return out;
}

}  // namespace

Poly substitute_last(const Poly& q, const AffineForm& t) {
  check_affine(q, t);
  if (q.n_vars() < 2) throw std::invalid_argument("substitution needs at least two variables");
  const RingSpec& ring = q.ring();
  const int z = q.n_vars() - 1;

  Sparse t_sparse;
  t_sparse[{}] = ring.reduce_u(t.constant);
  for (int i = 0; i < z; ++i) {
    const u64 c = ring.reduce_u(t.coeffs[static_cast<std::size_t>(i)]);
    if (c) t_sparse[{i}] = c;
  }

  Sparse total;
  const auto& monos = q.monomials();
  const auto coeffs = q.coeffs();
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == 0) continue;
    Sparse prod{{{}, coeffs[idx]}};
    for (int v : monos[idx].indices()) prod = multiply(prod, v == z ? t_sparse : Sparse{{{v}, 1}}, ring);
    for (const auto& [key, c] : prod) {
      u64& slot = total[key];
      slot = ring.add(slot, c);
    }
  }

  Poly out(ring, z, q.degree_bound());
  out.set_constant(static_cast<i64>(ring.add(q.constant(), total.count({}) ? total.at({}) : 0)));
  for (const auto& [key, c] : total)
    if (!key.empty()) out.set_term(key, static_cast<i64>(ring.add(out.term(key), c)));
  return out;
}

Poly shift_constant(const Poly& p, i64 c) {
  Poly out = p;
  out.set_constant(static_cast<i64>(p.ring().add(p.constant(), p.ring().reduce(c))));
  return out;
}

std::vector<u64> index_to_digits(u64 index, u64 m, std::size_t width) {
  std::vector<u64> digits(width, 0);
  for (std::size_t i = width; i > 0 && index; --i) {
    digits[i - 1] = index % m;
    index /= m;
  }
  return digits;
}

CoefficientStream::CoefficientStream(RingSpec ring, int n_vars, int degree_bound)
    : CoefficientStream(ring, n_vars, degree_bound, 0,
                        ipow_saturating(ring.modulus(), coef_count(n_vars, degree_bound))) {}

CoefficientStream::CoefficientStream(RingSpec ring, int n_vars, int degree_bound, u64 begin, u64 end)
    : ring_(std::move(ring)), n_vars_(n_vars), degree_bound_(degree_bound), begin_(begin), end_(end), index_(begin) {
  check_shape(n_vars, degree_bound);
  const std::size_t width = coef_count(n_vars, degree_bound);
  total_ = ipow_saturating(ring_.modulus(), width);
  if (end_ > total_) end_ = total_;
  digits_ = index_to_digits(begin_, ring_.modulus(), width);
}

bool CoefficientStream::next() {
  if (!started_) {
    started_ = true;
    return begin_ < end_;
  }
  if (index_ + 1 >= end_) return false;
  const u64 m = ring_.modulus();
  for (std::size_t i = digits_.size(); i > 0; --i) {
    if (++digits_[i - 1] < m) break;
    digits_[i - 1] = 0;
  }
  ++index_;
  return true;
}

Poly CoefficientStream::current() const { return Poly(ring_, n_vars_, degree_bound_, digits_, 0); }

std::string to_string(const Poly& p) {
  std::string body;
  auto append = [&](const std::string& term) {
    if (!body.empty()) body += " + ";
    body += term;
  };
  if (p.constant() != 0) append(std::to_string(p.constant()));
  const auto& monos = p.monomials();
  const auto coeffs = p.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    std::string term = coeffs[i] == 1 ? "" : std::to_string(coeffs[i]);
    for (int v : monos[i].indices()) {
      if (!term.empty()) term += '*';
      term += 'x' + std::to_string(v + 1);
    }
    append(term);
  }
  if (body.empty()) body = "0";
  return "poly mod " + std::to_string(p.modulus()) + ": " + body;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  struct Term {
    i64 sign = 1;
    u64 coeff = 1;
    std::vector<int> vars;
  };

  u64 header() {
    expect_word("poly");
    expect_word("mod");
    const u64 m = integer();
    skip_ws();
    if (!eat(':')) fail("expected ':' after modulus");
    return m;
  }

  std::vector<Term> terms(u64 m) {
    std::vector<Term> out;
    skip_ws();
    i64 sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    while (true) {
      Term t = term(m);
      t.sign = sign;
      out.push_back(std::move(t));
      skip_ws();
      if (pos_ == s_.size()) break;
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else fail("expected '+' or '-'");
    }
    return out;
  }

 private:
  Term term(u64 m) {
    Term t;
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'X')) {
        ++pos_;
        eat('_');
        const u64 idx = integer();
        if (idx == 0) fail("variables are numbered from x1");
        u64 power = 1;
        skip_ws();
        if (eat('^')) power = integer();
        if (power == 0 || power > static_cast<u64>(kMaxDegree)) fail("exponent must be 1..3");
        for (u64 i = 0; i < power; ++i) t.vars.push_back(static_cast<int>(idx - 1));
      } else {
        t.coeff = static_cast<u64>((static_cast<u128>(t.coeff) * (integer() % m)) % m);
      }
      skip_ws();
      if (!eat('*')) break;
    }
    if (t.vars.size() > static_cast<std::size_t>(kMaxDegree)) fail("term degree exceeds 3");
    return t;
  }

  u64 integer() {
    skip_ws();
    const std::size_t start = pos_;
    u64 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (u64{1} << 40)) fail("integer too large");
      v = v * 10 + static_cast<u64>(s_[pos_++] - '0');
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  void expect_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("cannot parse polynomial at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::optional<int> n_vars, std::optional<int> degree_bound) {
  PolyParser parser(text);
  const u64 m = parser.header();
  const RingSpec ring(m);
  const auto terms = parser.terms(m);

  int max_var = 0, max_deg = 1;
  for (const auto& t : terms) {
    for (int v : t.vars) max_var = std::max(max_var, v + 1);
    max_deg = std::max(max_deg, static_cast<int>(t.vars.size()));
  }
  const int n = n_vars.value_or(std::max(max_var, 1));
  const int d = degree_bound.value_or(max_deg);
  if (max_var > n) throw std::invalid_argument("polynomial uses x" + std::to_string(max_var) + " but has " +
                                               std::to_string(n) + " variables");
  if (max_deg > d && std::any_of(terms.begin(), terms.end(), [&](const auto& t) {
        return static_cast<int>(t.vars.size()) > d;
      }))
    throw std::invalid_argument("term degree exceeds the degree bound");

  Poly p(ring, n, d);
  for (const auto& t : terms) {
    const u64 c = t.sign < 0 ? ring.neg(t.coeff) : t.coeff;
    if (t.vars.empty()) {
      p.set_constant(static_cast<i64>(ring.add(p.constant(), c)));
    } else {
      p.set_term(t.vars, static_cast<i64>(ring.add(p.term(t.vars), c)));
    }
  }
  return p;
}

}  // namespace ringcensus
