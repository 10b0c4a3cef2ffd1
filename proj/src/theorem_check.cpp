#include "ringcensus/theorem_check.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "ringcensus/random.hpp"

namespace ringcensus {

std::string to_string(TheoremKind k) {
  switch (k) {
    case TheoremKind::Theorem1: return "theorem1";
    case TheoremKind::Theorem2: return "theorem2";
    case TheoremKind::Corollary1a: return "corollary1a";
    case TheoremKind::Corollary1b: return "corollary1b";
    case TheoremKind::Corollary1c: return "corollary1c";
  }
  return "?";
}

TheoremKind parse_theorem_kind(const std::string& s) {
  if (s == "1") return TheoremKind::Theorem1;
  if (s == "2") return TheoremKind::Theorem2;
  if (s == "c1a") return TheoremKind::Corollary1a;
  if (s == "c1b") return TheoremKind::Corollary1b;
  if (s == "c1c") return TheoremKind::Corollary1c;
  throw std::invalid_argument("unknown theorem '" + s + "' (expected 1, 2, c1a, c1b or c1c)");
}

namespace {

// Counts with one pass per target, independent of the histogram engine.
u64 direct_count(const Poly& q, u64 target) {
  const u64 m = q.modulus();
  std::vector<u64> x(static_cast<std::size_t>(q.n_vars()), 0);
  u64 count = 0;
  while (true) {
    if (q.evaluate_raw(x) == target) ++count;
    std::size_t i = x.size();
    while (i > 0) {
      if (++x[i - 1] < m) break;
      x[--i] = 0;
    }
    if (i == 0) return count;
  }
}

void check_theorem1_args(const Poly& q, const std::vector<u64>& w, const std::vector<int>& q_exp) {
  const auto f = q.ring().factorization();
  if (w.size() != f.size() || q_exp.size() != f.size())
    throw std::invalid_argument("w and q need one entry per prime factor of m");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (q_exp[i] < 0 || q_exp[i] > f[i].exponent) throw std::invalid_argument("q_i must lie in [0, r_i]");
}

// Calls fn(offset) for every index tuple of the theorem-1 sum.
void for_each_offset(const RingSpec& ring, const std::vector<u64>& w, const std::vector<int>& q_exp,
                     const std::function<void(u64)>& fn) {
  const auto f = ring.factorization();
  const u64 m = ring.modulus();
  std::vector<u64> limit(f.size()), step(f.size()), idx(f.size(), 0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    limit[j] = ipow(f[j].prime, static_cast<u64>(q_exp[j]));
    step[j] = ring.mul(ring.reduce_u(w[j]), (m / limit[j]) % m);
  }
  while (true) {
    u64 off = 0;
    for (std::size_t j = 0; j < f.size(); ++j) off = ring.add(off, ring.mul(step[j], idx[j] % m));
    fn(off);
    std::size_t j = f.size();
    while (j > 0) {
      if (++idx[j - 1] < limit[j - 1]) break;
      idx[--j] = 0;
    }
    if (j == 0) return;
  }
}

int two_exponent(const RingSpec& ring) {
  const auto f = ring.factorization();
  if (f.size() != 1 || f[0].prime != 2) throw std::invalid_argument("modulus must be a power of two");
  return f[0].exponent;
}

void check_theorem2_shape(const Poly& q) {
  two_exponent(q.ring());
  if (q.n_vars() < 3) throw std::invalid_argument("needs n >= 3");
  if (q.degree_bound() > 2) throw std::invalid_argument("needs degree <= 2");
}

void check_qv(int q, int v, int r) {
  if (q < 0 || q > r || v < 0 || v > r) throw std::invalid_argument("q and v must lie in [0, r]");
}

std::string describe_affine(const AffineForm& t) {
  std::string s = "T=(";
  for (std::size_t i = 0; i + 1 < t.coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(t.coeffs[i]);
  return s + "|" + std::to_string(t.constant) + ")";
}

// ---- sweep driver ----------------------------------------------------------

struct Collector {
  const CheckOptions* options;
  u64 polynomials = 0;
  u64 instances = 0;
  u128 lhs_total = 0;
  u64 violation_count = 0;
  std::vector<Violation> violations;
  std::atomic<bool>* stop;

  template <class Describe>
  void record(const Poly& p, u128 lhs, u64 bound, Describe&& describe) {
    ++instances;
    lhs_total += lhs;
    if (lhs % bound == 0) return;
    ++violation_count;
    if (violations.size() < options->max_recorded) violations.push_back({p, describe(), lhs, bound});
    if (options->stop_at_first) stop->store(true);
  }
};

u64 effective_bound(u64 bound, const CheckOptions& o) {
  if (o.divisor_override) return *o.divisor_override;
  return bound * o.bound_multiplier;
}

using PerPoly = std::function<void(const Poly&, Collector&)>;

CheckReport run_sweep(TheoremKind which, u64 m, int n, int d, const Sweep& sweep, const CheckOptions& options,
                      long double work_per_poly, const PerPoly& fn) {
  if (options.bound_multiplier == 0) throw std::invalid_argument("bound multiplier must be positive");
  if (options.divisor_override && *options.divisor_override == 0) throw std::invalid_argument("divisor must be positive");
  const RingSpec ring(m);
  const std::size_t c = coef_count(n, d);

  std::vector<Poly> samples;
  u64 total;
  if (sweep.mode == Sweep::Mode::Sampled) {
    if (sweep.count == 0) throw std::invalid_argument("sampled sweep needs a positive count");
    SeededRng rng(sweep.seed);
    std::vector<u64> coeffs(c);
    for (u64 i = 0; i < sweep.count; ++i) {
      for (auto& x : coeffs) x = rng.below(m);
      const u64 constant = rng.below(m);
      samples.emplace_back(ring, n, d, coeffs, constant);
    }
    total = sweep.count;
  } else {
    total = ipow_saturating(m, c);
  }
  const long double work = static_cast<long double>(total) * work_per_poly;
  if (work > static_cast<long double>(options.budget))
    throw BudgetExceeded(to_string(which) + " sweep exceeds the work budget", work, options.budget);

  const unsigned workers = static_cast<unsigned>(std::clamp<u64>(options.workers, 1, std::max<u64>(total, 1)));
  std::atomic<bool> stop{false};
  std::vector<Collector> parts(workers, Collector{&options, 0, 0, 0, 0, {}, &stop});

  auto block = [&](unsigned w) {
    const u64 begin = static_cast<u64>(static_cast<u128>(total) * w / workers);
    const u64 end = static_cast<u64>(static_cast<u128>(total) * (w + 1) / workers);
    Collector& col = parts[w];
    if (sweep.mode == Sweep::Mode::Sampled) {
      for (u64 i = begin; i < end && !stop.load(); ++i) {
        fn(samples[i], col);
        ++col.polynomials;
      }
    } else {
      CoefficientStream stream(ring, n, d, begin, end);
      while (!stop.load() && stream.next()) {
        fn(stream.current(), col);
        ++col.polynomials;
      }
    }
  };
  if (workers == 1) {
    block(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(block, w);
    for (auto& t : threads) t.join();
  }

  CheckReport report;
  report.which = which;
  if (sweep.mode == Sweep::Mode::Sampled) report.seed = sweep.seed;
  for (auto& p : parts) {
    report.polynomials += p.polynomials;
    report.instances += p.instances;
    report.lhs_total += p.lhs_total;
    report.violation_count += p.violation_count;
    for (auto& v : p.violations)
      if (report.violations.size() < options.max_recorded) report.violations.push_back(std::move(v));
  }
  return report;
}

std::string bound_note(const std::string& base, const CheckOptions& o) {
  if (o.divisor_override) return "fixed divisor " + std::to_string(*o.divisor_override);
  if (o.bound_multiplier != 1) return base + " x " + std::to_string(o.bound_multiplier);
  return base;
}

std::vector<u64> unit_grid(u64 m) {
  std::vector<u64> g{1};
  if (m - 1 != 1) g.push_back(m - 1);
  return g;
}

std::vector<AffineForm> affine_grid(int n, u64 m) {
  std::vector<AffineForm> out;
  const int free_vars = n - 1;
  for (u64 mask = 0; mask < (u64{1} << free_vars); ++mask)
    for (u64 c = 0; c < m; ++c) {
      AffineForm t = AffineForm::zero(n);
      for (int i = 0; i < free_vars; ++i) t.coeffs[static_cast<std::size_t>(i)] = (mask >> (free_vars - 1 - i)) & 1;
      t.constant = c;
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace

// ---- Theorem 1 --------------------------------------------------------------

u128 theorem1_lhs(const Poly& q, u64 k, const std::vector<u64>& w, const std::vector<int>& q_exp) {
  check_theorem1_args(q, w, q_exp);
  const auto h = value_histogram(q);
  const RingSpec& ring = q.ring();
  const u64 base = ring.reduce_u(k);
  u128 total = 0;
  for_each_offset(ring, w, q_exp, [&](u64 off) { total += h.counts[ring.add(base, off)]; });
  return total;
}

u128 theorem1_lhs_nested(const Poly& q, u64 k, const std::vector<u64>& w, const std::vector<int>& q_exp) {
  check_theorem1_args(q, w, q_exp);
  const RingSpec& ring = q.ring();
  const u64 base = ring.reduce_u(k);
  u128 total = 0;
  for_each_offset(ring, w, q_exp, [&](u64 off) { total += direct_count(q, ring.add(base, off)); });
  return total;
}

CheckReport verify_theorem1(u64 m, int n, int d, const Sweep& sweep, const CheckOptions& options) {
  const RingSpec ring(m);
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  const auto f = ring.factorization();
  const std::size_t np = f.size();

  // All q tuples with their bounds.
  struct QCase {
    std::vector<int> q;
    u64 bound;
  };
  std::vector<QCase> qcases;
  std::vector<int> q(np, 0);
  while (true) {
    qcases.push_back({q, effective_bound(theorem1_bound(ring, n, d, q).value, options)});
    std::size_t j = np;
    while (j > 0) {
      if (++q[j - 1] <= f[j - 1].exponent) break;
      q[--j] = 0;
    }
    if (j == 0) break;
  }
  const std::vector<u64> units = unit_grid(m);

  auto per_poly = [&](const Poly& p, Collector& col) {
    const auto h = value_histogram(p, options.budget);
    for (const QCase& qc : qcases) {
      // w_j only matters when q_j > 0.
      std::vector<std::vector<u64>> choices(np);
      for (std::size_t j = 0; j < np; ++j) {
        choices[j] = {0};
        if (qc.q[j] > 0) choices[j].insert(choices[j].end(), units.begin(), units.end());
      }
      std::vector<std::size_t> pick(np, 0);
      std::vector<u64> w(np);
      while (true) {
        for (std::size_t j = 0; j < np; ++j) w[j] = choices[j][pick[j]];
        std::vector<u64> offsets;
        for_each_offset(ring, w, qc.q, [&](u64 off) { offsets.push_back(off); });
        for (u64 k = 0; k < m; ++k) {
          u128 lhs = 0;
          for (u64 off : offsets) lhs += h.counts[ring.add(k, off)];
          col.record(p, lhs, qc.bound, [&] {
            std::string s = "k=" + std::to_string(k) + " w=(";
            for (std::size_t j = 0; j < np; ++j) s += (j ? "," : "") + std::to_string(w[j]);
            s += ") q=(";
            for (std::size_t j = 0; j < np; ++j) s += (j ? "," : "") + std::to_string(qc.q[j]);
            return s + ")";
          });
        }
        std::size_t j = np;
        while (j > 0) {
          if (++pick[j - 1] < choices[j - 1].size()) break;
          pick[--j] = 0;
        }
        if (j == 0) break;
      }
    }
  };

  const long double pts = std::pow(static_cast<long double>(m), static_cast<long double>(n));
  CheckReport r = run_sweep(TheoremKind::Theorem1, m, n, d, sweep, options, pts, per_poly);
  r.bound_description = bound_note("theorem1_bound(m, n, d, q)", options);
  return r;
}

// ---- Theorem 2 ----------------------------------------------------------------

std::string describe(const Theorem2Params& p) {
  return describe_affine(p.t) + " k=" + std::to_string(p.k) + " w=" + std::to_string(p.w) + " g=" +
         std::to_string(p.g) + " u=" + std::to_string(p.u) + " q=" + std::to_string(p.q) + " v=" + std::to_string(p.v);
}

std::string describe(const Corollary1Params& p) {
  return "l=" + std::to_string(p.l) + " k=" + std::to_string(p.k) + " w=" + std::to_string(p.w) + " g=" +
         std::to_string(p.g) + " q=" + std::to_string(p.q) + " v=" + std::to_string(p.v);
}

u128 theorem2_lhs(const Poly& q, const Theorem2Params& p) {
  check_theorem2_shape(q);
  const RingSpec& ring = q.ring();
  const int r = two_exponent(ring);
  check_qv(p.q, p.v, r);
  const u64 step_i = ring.mul(ring.reduce_u(p.w), u64{1} << (r - p.q));
  const u64 unit_j = u64{1} << (r - p.v);
  u128 total = 0;
  for (u64 i = 0; i < (u64{1} << p.q); ++i)
    for (u64 j = 0; j < (u64{1} << p.v); ++j) {
      const u64 jj = ring.mul(unit_j, j % ring.modulus());
      AffineForm t = p.t;
      t.constant = ring.add(ring.reduce_u(t.constant), ring.mul(ring.reduce_u(p.u), jj));
      const u64 target =
          ring.add(ring.add(ring.reduce_u(p.k), ring.mul(step_i, i % ring.modulus())), ring.mul(ring.reduce_u(p.g), jj));
      total += count_constrained(q, t, target);
    }
  return total;
}

u128 corollary1_lhs(Corollary1Variant variant, const Poly& q, const Corollary1Params& p) {
  check_theorem2_shape(q);
  const RingSpec& ring = q.ring();
  const int r = two_exponent(ring);
  check_qv(p.q, p.v, r);
  const u64 step_w = ring.mul(ring.reduce_u(p.w), u64{1} << (r - p.q));
  const u64 unit_j = u64{1} << (r - p.v);
  const u64 reps_i = variant == Corollary1Variant::B ? (u64{1} << p.q) : 1;
  u128 total = 0;
  for (u64 j = 0; j < (u64{1} << p.v); ++j) {
    AffineForm t = AffineForm::zero(q.n_vars());
    t.constant = ring.add(ring.reduce_u(p.l), ring.mul(ring.reduce_u(p.g), ring.mul(unit_j, j % ring.modulus())));
    for (u64 i = 0; i < reps_i; ++i) {
      u64 target = ring.reduce_u(p.k);
      if (variant == Corollary1Variant::B) target = ring.add(target, ring.mul(step_w, i % ring.modulus()));
      if (variant == Corollary1Variant::C) target = ring.add(target, ring.mul(step_w, j % ring.modulus()));
      total += count_constrained(q, t, target);
    }
  }
  return total;
}

ShiftedFibers::ShiftedFibers(const Poly& q, const AffineForm& t) : m_(q.modulus()) {
  if (q.degree_bound() > 2) throw std::invalid_argument("needs degree <= 2");
  if (q.n_vars() < 2) throw std::invalid_argument("needs at least two variables");
  if (t.coeffs.size() != static_cast<std::size_t>(q.n_vars()))
    throw std::invalid_argument("affine form must list one coefficient per variable");
  const RingSpec& ring = q.ring();
  if (ring.reduce_u(t.coeffs.back()) != 0) throw std::invalid_argument("affine form references z");

  const int z = q.n_vars() - 1;
  const std::size_t free_vars = static_cast<std::size_t>(z);
  const u64 czz = q.degree_bound() >= 2 ? q.term(std::vector<int>{z, z}) : 0;
  const u64 cz = q.term(std::vector<int>{z});
  std::vector<u64> ciz(free_vars, 0);
  if (q.degree_bound() >= 2)
    for (int i = 0; i < z; ++i) ciz[static_cast<std::size_t>(i)] = q.term(std::vector<int>{i, z});

  std::vector<u64> joint(m_ * m_, 0);
  std::vector<u64> point(free_vars + 1, 0);
  while (true) {
    point[free_vars] = 0;
    const u64 a = q.evaluate_raw(point);
    u64 l = cz, tv = ring.reduce_u(t.constant);
    for (std::size_t i = 0; i < free_vars; ++i) {
      l = ring.add(l, ring.mul(ciz[i], point[i]));
      tv = ring.add(tv, ring.mul(ring.reduce_u(t.coeffs[i]), point[i]));
    }
    const u64 f = ring.add(ring.add(a, ring.mul(tv, l)), ring.mul(czz, ring.mul(tv, tv)));
    const u64 g = ring.add(l, ring.mul(ring.mul(2 % m_, czz), tv));
    ++joint[f * m_ + g];
    std::size_t i = free_vars;
    while (i > 0) {
      if (++point[i - 1] < m_) break;
      point[--i] = 0;
    }
    if (i == 0) break;
  }

  table_.assign(m_ * m_, 0);
  for (u64 s = 0; s < m_; ++s) {
    const u64 tail = ring.mul(czz, ring.mul(s, s));
    for (u64 f = 0; f < m_; ++f)
      for (u64 g = 0; g < m_; ++g) {
        const u64 c = joint[f * m_ + g];
        if (c) table_[s * m_ + ring.add(ring.add(f, ring.mul(s, g)), tail)] += c;
      }
  }
}

u64 ShiftedFibers::progression(u64 s, u64 target, u64 step, u64 reps) const {
  const u64* row = &table_[(s % m_) * m_];
  u64 total = 0, v = target % m_;
  step %= m_;
  for (u64 i = 0; i < reps; ++i) {
    total += row[v];
    v += step;
    if (v >= m_) v -= m_;
  }
  return total;
}

u128 ShiftedFibers::theorem2_lhs(const Theorem2Params& p, int r) const {
  const u64 mask = m_ - 1;
  const u64 step_i = (p.w << (r - p.q)) & mask;
  const u64 unit_j = u64{1} << (r - p.v);
  u128 total = 0;
  for (u64 j = 0; j < (u64{1} << p.v); ++j) {
    const u64 jj = (unit_j * j) & mask;
    total += progression((p.u * jj) & mask, (p.k + p.g * jj) & mask, step_i, u64{1} << p.q);
  }
  return total;
}

u128 ShiftedFibers::corollary1_lhs(Corollary1Variant variant, const Corollary1Params& p, int r) const {
  const u64 mask = m_ - 1;
  const u64 step_w = (p.w << (r - p.q)) & mask;
  const u64 unit_j = u64{1} << (r - p.v);
  u128 total = 0;
  for (u64 j = 0; j < (u64{1} << p.v); ++j) {
    const u64 s = (p.g * ((unit_j * j) & mask)) & mask;
    switch (variant) {
      case Corollary1Variant::A: total += count(s, p.k); break;
      case Corollary1Variant::B: total += progression(s, p.k, step_w, u64{1} << p.q); break;
      case Corollary1Variant::C: total += count(s, (p.k + step_w * j) & mask); break;
    }
  }
  return total;
}

CheckReport verify_theorem2(int r, int n, const Sweep& sweep, const CheckOptions& options) {
  if (r < 1 || r > 30) throw std::invalid_argument("r must lie in [1, 30]");
  if (n < 3) throw std::invalid_argument("needs n >= 3");
  const u64 m = u64{1} << r;
  std::vector<std::vector<u64>> bound(static_cast<std::size_t>(r) + 1, std::vector<u64>(static_cast<std::size_t>(r) + 1));
  for (int q = 0; q <= r; ++q)
    for (int v = 0; v <= r; ++v)
      bound[static_cast<std::size_t>(q)][static_cast<std::size_t>(v)] = effective_bound(theorem2_bound(r, n, q, v).value, options);
  const std::vector<AffineForm> forms = affine_grid(n, m);
  std::vector<u64> units = unit_grid(m);
  std::vector<u64> with_zero{0};
  with_zero.insert(with_zero.end(), units.begin(), units.end());

  auto per_poly = [&](const Poly& p, Collector& col) {
    for (const AffineForm& t : forms) {
      const ShiftedFibers fib(p, t);
      Theorem2Params prm;
      for (prm.q = 0; prm.q <= r; ++prm.q)
        for (prm.v = 0; prm.v <= r; ++prm.v) {
          const u64 b = bound[static_cast<std::size_t>(prm.q)][static_cast<std::size_t>(prm.v)];
          const std::vector<u64>& ws = prm.q > 0 ? with_zero : std::vector<u64>{0};
          const std::vector<u64>& gs = prm.v > 0 ? with_zero : std::vector<u64>{0};
          for (u64 w : ws)
            for (u64 g : gs)
              for (u64 u : gs)
                for (u64 k = 0; k < m; ++k) {
                  prm.w = w;
                  prm.g = g;
                  prm.u = u;
                  prm.k = k;
                  col.record(p, fib.theorem2_lhs(prm, r), b, [&] {
                    Theorem2Params copy = prm;
                    copy.t = t;
                    return describe(copy);
                  });
                }
        }
    }
  };

  const long double work = static_cast<long double>(forms.size()) *
                           (std::pow(static_cast<long double>(m), static_cast<long double>(n - 1)) +
                            static_cast<long double>(m * m * m));
  CheckReport rep = run_sweep(TheoremKind::Theorem2, m, n, 2, sweep, options, work, per_poly);
  rep.bound_description = bound_note("theorem2_bound(r, n, q, v)", options);
  return rep;
}

CheckReport verify_corollary1(Corollary1Variant variant, int r, int n, const Sweep& sweep, const CheckOptions& options) {
  if (r < 1 || r > 30) throw std::invalid_argument("r must lie in [1, 30]");
  if (n < 3) throw std::invalid_argument("needs n >= 3");
  const u64 m = u64{1} << r;
  std::vector<u64> with_zero{0};
  for (u64 u : unit_grid(m)) with_zero.push_back(u);
  const TheoremKind kind = variant == Corollary1Variant::A   ? TheoremKind::Corollary1a
                           : variant == Corollary1Variant::B ? TheoremKind::Corollary1b
                                                             : TheoremKind::Corollary1c;

  struct Case {
    int q, v;
    u64 bound;
  };
  std::vector<Case> cases;
  for (int q = 0; q <= r; ++q)
    for (int v = 0; v <= r; ++v) {
      if (variant == Corollary1Variant::A && q > 0) continue;
      if (variant == Corollary1Variant::C && q > v && !options.allow_q_above_v) continue;
      cases.push_back({q, v, effective_bound(corollary1_bound(variant, r, n, q, v).value, options)});
    }

  auto per_poly = [&](const Poly& p, Collector& col) {
    for (u64 l = 0; l < m; ++l) {
      AffineForm t = AffineForm::zero(n);
      t.constant = l;
      const ShiftedFibers fib(p, t);
      for (const Case& c : cases) {
        const bool uses_w = variant != Corollary1Variant::A && (variant == Corollary1Variant::B ? c.q > 0 : c.v > 0);
        const std::vector<u64>& ws = uses_w ? with_zero : std::vector<u64>{0};
        const std::vector<u64>& gs = c.v > 0 ? with_zero : std::vector<u64>{0};
        for (u64 w : ws)
          for (u64 g : gs)
            for (u64 k = 0; k < m; ++k) {
              const Corollary1Params prm{l, k, w, g, c.q, c.v};
              col.record(p, fib.corollary1_lhs(variant, prm, r), c.bound, [&] { return describe(prm); });
            }
      }
    }
  };

  const long double work = static_cast<long double>(m) *
                           (std::pow(static_cast<long double>(m), static_cast<long double>(n - 1)) +
                            static_cast<long double>(m * m * m));
  CheckReport rep = run_sweep(kind, m, n, 2, sweep, options, work, per_poly);
  rep.bound_description = bound_note("corollary1_bound(variant, r, n, q, v)", options);
  return rep;
}

}  // namespace ringcensus
