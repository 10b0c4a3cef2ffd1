// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "oracles.hpp"
#include "ringcensus/bounds.hpp"
#include "ringcensus/census.hpp"
#include "ringcensus/image_multiset.hpp"
#include "ringcensus/report.hpp"
#include "ringcensus/theorem_check.hpp"

using namespace ringcensus;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Census results are shared between criteria.
std::map<std::tuple<u64, int, int>, Spectrum> g_spectra;

const Spectrum& spectrum(u64 m, int n, int d) {
  auto key = std::make_tuple(m, n, d);
  auto it = g_spectra.find(key);
  if (it == g_spectra.end()) {
    CensusOptions opt;
    opt.force = true;
    it = g_spectra.emplace(key, run_census(Cell{m, n, d}, opt)).first;
  }
  return it->second;
}

bool spectrum_is(const Spectrum& s, const std::map<u64, u64>& expect) {
  if (s.entries.size() != expect.size()) return false;
  for (const auto& [k, v] : expect) {
    auto it = s.entries.find(k);
    if (it == s.entries.end() || it->second != v) return false;
  }
  return true;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  if (!spectrum_is(spectrum(3, 2, 2), {{0, 26}, {1, 54}, {2, 216}, {3, 192}, {4, 108}, {5, 108}, {6, 24}, {9, 1}}))
    o.fail("(3,2,2) differs");
  if (!spectrum_is(spectrum(2, 3, 2), {{0, 8}, {2, 224}, {4, 560}, {6, 224}, {8, 8}})) o.fail("(2,3,2) differs");
  if (!spectrum_is(spectrum(4, 3, 2), {{0, 16264},
                                       {8, 218624},
                                       {12, 114688},
                                       {16, 364000},
                                       {20, 114688},
                                       {24, 189952},
                                       {32, 30128},
                                       {48, 224},
                                       {64, 8}}))
    o.fail("(4,3,2) differs");
  const double t = seconds_since(t0);
  if (t >= 60) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "3 spectra exact";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  if (!spectrum_is(spectrum(2, 3, 3), {{0, 4096},
                                       {1, 32768},
                                       {2, 114688},
                                       {3, 229376},
                                       {4, 286720},
                                       {5, 229376},
                                       {6, 114688},
                                       {7, 32768},
                                       {8, 4096}}))
    o.fail("(2,3,3) differs");
  const double t = seconds_since(t0);
  if (t >= 60) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "(2,3,3) exact";
  return o;
}

// Rows m = 2..8, columns n = 1..3.
constexpr u64 kMinDiv[7][3] = {{1, 1, 2}, {1, 1, 3}, {1, 2, 4}, {1, 1, 5}, {1, 1, 6}, {1, 1, 7}, {1, 4, 16}};
constexpr u64 kPctMinDiv[7][3] = {{500, 500, 438}, {667, 667, 535}, {250, 250, 219}, {640, 800, 675},
                                  {519, 646, 624}, {612, 857, 753}, {250, 375, 191}};
constexpr u64 kSlots[7][3] = {{3, 5, 5}, {4, 8, 8}, {4, 7, 9}, {4, 8, 8}, {6, 18, 18}, {4, 8, 8}, {5, 10, 14}};
constexpr u64 kPctSlots[7][3] = {{1000, 1000, 1000}, {1000, 800, 800}, {800, 778, 529}, {667, 308, 308},
                                 {857, 486, 486},    {500, 160, 160},  {556, 588, 424}};
constexpr u64 kFirstGap[7][3] = {{1, 1, 2}, {1, 1, 3}, {1, 2, 8}, {1, 1, 5}, {1, 1, 6}, {1, 1, 7}, {1, 4, 16}};
constexpr u64 kLastGap[7][3] = {{1, 1, 2}, {1, 3, 9}, {2, 4, 16}, {3, 15, 75}, {2, 9, 54}, {5, 35, 245}, {4, 16, 128}};

bool within_tenth(u64 got, u64 want) { return (got > want ? got - want : want - got) <= 1; }

Outcome criterion3() {
  Outcome o;
  int cells = 0;
  for (u64 m = 2; m <= 8; ++m)
    for (int n = 1; n <= 3; ++n) {
      const MetricsReport r = derive_metrics(spectrum(m, n, 2));
      const std::size_t i = m - 2, j = static_cast<std::size_t>(n - 1);
      const std::string at = Cell{m, n, 2}.label();
      if (r.min_divisibility != kMinDiv[i][j]) o.fail(at + " minimum divisibility");
      if (!within_tenth(r.pct_min_div.tenths(), kPctMinDiv[i][j])) o.fail(at + " percent at minimum divisibility");
      if (r.slots_used != kSlots[i][j]) o.fail(at + " slots used");
      if (!within_tenth(r.pct_slots_used.tenths(), kPctSlots[i][j])) o.fail(at + " percent slots used");
      if (r.first_gap != kFirstGap[i][j]) o.fail(at + " first gap");
      if (r.last_gap != kLastGap[i][j]) o.fail(at + " last gap");
      ++cells;
    }
  if (o.pass) o.detail = std::to_string(cells) + " cells, 6 metrics each";
  return o;
}

Outcome criterion4() {
  Outcome o;
  int cells = 0, sharp = 0;
  for (const auto& [key, s] : g_spectra) {
    const auto [m, n, d] = key;
    const u64 b = marshall_ramage_bound(RingSpec(m), n, d).value;
    for (const auto& [k, c] : s.entries)
      if (k % b != 0) o.fail(s.cell.label() + " key " + std::to_string(k) + " not divisible by " + std::to_string(b));
    if (d == 2 && m <= 8 && n <= 3) {
      if (derive_metrics(s).min_divisibility != b) o.fail(s.cell.label() + " bound is not the observed gcd");
      ++sharp;
    }
    ++cells;
  }
  if (o.pass) o.detail = std::to_string(cells) + " cells divisible, bound sharp on " + std::to_string(sharp);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = Clock::now();
  const CheckReport ex = verify_theorem1(4, 2, 2, Sweep::exhaustive());
  if (!ex.passed()) o.fail("exhaustive m=4 found violations");
  const CheckReport sm = verify_theorem1(12, 2, 2, Sweep::sampled(1, 1000));
  if (!sm.passed()) o.fail("sampled m=12 found violations");
  CheckOptions doubled;
  doubled.bound_multiplier = 2;
  const CheckReport dbl = verify_theorem1(4, 2, 2, Sweep::exhaustive(), doubled);
  if (dbl.violation_count == 0) o.fail("doubled bound not violated");
  const double t = seconds_since(t0);
  if (t >= 300) o.fail("took " + std::to_string(t) + " s");
  if (o.pass)
    o.detail = std::to_string(ex.instances) + " + " + std::to_string(sm.instances) + " instances clean, doubled bound: " +
               std::to_string(dbl.violation_count) + " violations";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  u64 instances = 0;
  auto take = [&](const CheckReport& r, const std::string& what) {
    instances += r.instances;
    if (!r.passed()) o.fail(what + " found violations");
  };
  take(verify_theorem2(2, 3, Sweep::exhaustive()), "theorem 2 exhaustive r=2");
  take(verify_theorem2(3, 3, Sweep::sampled(1, 500)), "theorem 2 sampled r=3");
  const std::pair<Corollary1Variant, const char*> variants[] = {
      {Corollary1Variant::A, "a"}, {Corollary1Variant::B, "b"}, {Corollary1Variant::C, "c"}};
  for (const auto& [v, name] : variants) {
    take(verify_corollary1(v, 2, 3, Sweep::exhaustive()), std::string("corollary ") + name + " exhaustive r=2");
    take(verify_corollary1(v, 3, 3, Sweep::sampled(1, 500)), std::string("corollary ") + name + " sampled r=3");
  }
  CheckOptions doubled;
  doubled.bound_multiplier = 2;
  doubled.stop_at_first = true;
  if (verify_theorem2(2, 3, Sweep::exhaustive(), doubled).violation_count == 0) o.fail("doubled bound not violated");
  const double t = seconds_since(t0);
  if (t >= 600) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(instances) + " instances clean, doubled bound violated";
  return o;
}

Multiset brute_image(u64 a, u64 b, u64 c, int r) {
  Multiset out;
  for (const auto& [k, v] : oracle::quad_image(a, b, c, u64{1} << r)) out[k] = v;
  return out;
}

Outcome criterion7() {
  Outcome o;
  u64 checks = 0;
  for (int r : {4, 5}) {
    const u64 m = u64{1} << r;
    for (u64 a = 0; a < m; ++a)
      for (u64 b = 0; b < m; ++b)
        for (u64 c = 0; c < m; ++c, ++checks)
          if (image_quadratic(a, b, c, r).expand() != brute_image(a, b, c, r)) o.fail("image mismatch");
  }
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10000; ++i, ++checks) {
    const u64 a = rng() % 64, b = rng() % 64, c = rng() % 64;
    if (image_quadratic(a, b, c, 6).expand() != brute_image(a, b, c, 6)) o.fail("image mismatch at r=6");
  }
  for (int r = 1; r <= 10; ++r) {
    const u64 m = u64{1} << r;
    std::vector<u64> products(m, 0), squares(m, 0);
    for (u64 x = 0; x < m; ++x) {
      ++squares[(x * x) & (m - 1)];
      for (u64 y = 0; y < m; ++y) ++products[(x * y) & (m - 1)];
    }
    for (u64 t = 0; t < m; ++t, ++checks)
      if (count_product_pairs(t, r) != products[t]) o.fail("product pairs mismatch");
    for (int a = 0; a <= r; ++a)
      for (u64 k = 0; k < m; ++k, ++checks) {
        const u64 target = 2 * a >= r ? 0 : ((u64{1} << (2 * a)) + (k << (2 * a + 3))) & (m - 1);
        if (square_fiber(a, k, r).count != squares[target]) o.fail("square fiber mismatch");
      }
  }
  for (int r = 1; r <= 12; ++r)
    for (int mp = 0; mp <= r; ++mp)
      for (int k = 0; k <= mp; ++k) {
        const int top = (r - mp + 1) / 2;
        for (int fs = 0; fs <= top; ++fs, ++checks)
          if (!cumulative_slice_count(fs, mp, k, r).agree()) o.fail("cumulative slice count mismatch");
        if (mp < r)
          for (int f = 0; f < top; ++f, ++checks)
            if (!slice_count(f, mp, k, r).agree()) o.fail("slice count mismatch");
      }
  if (o.pass) o.detail = std::to_string(checks) + " comparisons, zero mismatches";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  u64 calls = 0;
  for (int r = 1; r <= 4; ++r) {
    const u64 m = u64{1} << r;
    auto rnd = [&] { return rng() % m; };
    for (int v = 0; v <= r; ++v)
      for (int q = 0; q <= r; ++q) {
        for (int d = 0; d <= std::min(v, q); ++d)
          for (int i = 0; i < 200; ++i, ++calls) {
            const DomainQuad p{rnd(), rnd(), rnd(), rnd(), v};
            const DomainQuad qq{rnd(), rnd(), rnd(), rnd(), q};
            if (!intersection_size(p, qq, d, r).divides()) o.fail("slice intersection not divisible");
          }
        for (int e = 0; e <= std::min(q, v); ++e)
          for (int i = 0; i < 100; ++i, ++calls) {
            const DomainQuad p{rnd(), rnd(), rnd(), rnd(), q};
            if (!intersection_with_S(p, e, v, r).divides()) o.fail("S intersection not divisible");
          }
      }
  }
  if (o.pass) o.detail = std::to_string(calls) + " intersections, zero violations";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  const u64 primes[] = {2, 3, 5, 7, 11, 13};
  int done = 0, scanned = 0;
  while (done < 1000) {
    const u64 p = primes[rng() % 6];
    const int r = 1 + static_cast<int>(rng() % 4);
    const int rp = r + 1 + static_cast<int>(rng() % static_cast<u64>(r));
    const u64 big = ipow(p, static_cast<u64>(rp)), small = ipow(p, static_cast<u64>(r));
    const u64 u = rng() % small;
    std::vector<i64> coeffs(2 + rng() % 4);
    for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs[i] = static_cast<i64>(rng() % big);
    // Choose the constant so that u is a root mod p^r.
    const RingSpec ring(big);
    u64 rest = 0, pw = 1;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
      pw = ring.mul(pw, u);
      rest = ring.add(rest, ring.mul(static_cast<u64>(coeffs[i]), pw));
    }
    coeffs[0] = static_cast<i64>(ring.add(ring.neg(rest), ring.mul(small, rng() % big)));
    const UniPoly f(ring, coeffs);
    if (f.derivative().eval_mod(u, p) == 0) continue;
    const u64 v = hensel_lift(f, u, r, rp).value();
    if (f.eval(v) != 0) o.fail("lift is not a root");
    if (v % small != u) o.fail("lift does not reduce to the root");
    if (big <= (u64{1} << 16)) {
      int roots = 0;
      for (u64 x = u; x < big; x += small)
        if (f.eval(x) == 0) ++roots;
      if (roots != 1) o.fail("lift is not unique");
      ++scanned;
    }
    ++done;
  }
  if (o.pass) o.detail = std::to_string(done) + " lifts, " + std::to_string(scanned) + " uniqueness scans";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Cell cell{8, 6, 3};
  int hits512 = 0, hits256 = 0;
  for (u64 seed = 1; seed <= 100; ++seed) {
    ProbeOptions first;
    first.stop_at_first = true;
    if (!random_divisibility_probe(cell, 512, 50, seed, first).empty()) ++hits512;
    if (!random_divisibility_probe(cell, 256, 50, seed).empty()) ++hits256;
  }
  if (hits512 < 95) o.fail("divisor 512 hit in only " + std::to_string(hits512) + " of 100");
  if (hits256 != 0) o.fail("divisor 256 left remainders in " + std::to_string(hits256) + " of 100");
  if (o.pass) o.detail = "512: " + std::to_string(hits512) + "/100 runs with remainders, 256: none";
  return o;
}

Outcome criterion11() {
  Outcome o;
  const Cell cell{4, 3, 2};
  CensusOptions one, eight;
  eight.workers = 8;
  const Spectrum a = run_census(cell, one), b = run_census(cell, eight);
  if (spectrum_to_csv(a) != spectrum_to_csv(b) || spectrum_to_json(a).dump() != spectrum_to_json(b).dump())
    o.fail("outputs differ");
  if (o.pass) o.detail = "CSV and JSON identical";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"census exactness", criterion1},
      {"degree-3 census", criterion2},
      {"metric tables", criterion3},
      {"bound consistency", criterion4},
      {"first divisibility verifier", criterion5},
      {"second divisibility verifier and corollary", criterion6},
      {"quadratic image oracles", criterion7},
      {"intersection divisibility", criterion8},
      {"Hensel lifting", criterion9},
      {"probe behavior", criterion10},
      {"parallel determinism", criterion11},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
