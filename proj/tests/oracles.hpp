#pragma once

// Brute-force reference implementations. Deliberately naive and
// independent of the library's fast paths.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

struct Term {
  u64 coeff;
  std::vector<int> vars;
};

/// Terms of a polynomial given by its coefficient vector, using the
/// reference nested-loop layout.
inline std::vector<Term> terms_from_coeffs(const std::vector<u64>& coefs, int n, int d) {
  std::vector<Term> out;
  std::size_t off = 0;
  for (int i = 0; i < n; ++i) out.push_back({coefs[off++], {i}});
  if (d >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out.push_back({coefs[off++], {i, j}});
  if (d >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) out.push_back({coefs[off++], {i, j, k}});
  return out;
}

inline u64 eval(const std::vector<Term>& terms, u64 constant, const std::vector<u64>& x, u64 m) {
  u64 acc = constant % m;
  for (const auto& t : terms) {
    u64 v = t.coeff % m;
    for (int i : t.vars) v = v * x[static_cast<std::size_t>(i)] % m;
    acc = (acc + v) % m;
  }
  return acc;
}

/// Advances an odometer with base m, last slot fastest; false after wrapping.
inline bool next(std::vector<u64>& digits, u64 m) {
  for (std::size_t i = digits.size(); i > 0; --i) {
    if (++digits[i - 1] < m) return true;
    digits[i - 1] = 0;
  }
  return false;
}

inline std::vector<u64> histogram(const std::vector<Term>& terms, u64 constant, int n, u64 m) {
  std::vector<u64> out(m, 0);
  std::vector<u64> x(static_cast<std::size_t>(n), 0);
  do {
    ++out[eval(terms, constant, x, m)];
  } while (next(x, m));
  return out;
}

/// Full census by the reference scheme: every constant-free polynomial, every
/// residue class as its constant.
inline std::map<u64, unsigned long long> census(u64 m, int n, int d) {
  std::size_t c = static_cast<std::size_t>(n);
  if (d >= 2) c += static_cast<std::size_t>(n * (n + 1) / 2);
  if (d >= 3) c += static_cast<std::size_t>(n * (n + 1) * (n + 2) / 6);
  std::map<u64, unsigned long long> spectrum;
  std::vector<u64> coefs(c, 0);
  do {
    const auto h = histogram(terms_from_coeffs(coefs, n, d), 0, n, m);
    for (u64 v : h) ++spectrum[v];
  } while (next(coefs, m));
  return spectrum;
}

/// Image of a*x^2 + b*x + c over x in {l + step*j : j < count} as value -> multiplicity.
inline std::map<u64, u64> quad_image(u64 a, u64 b, u64 c, u64 m, u64 l = 0, u64 step = 1, u64 count = 0) {
  if (count == 0) count = m;
  std::map<u64, u64> out;
  for (u64 j = 0; j < count; ++j) {
    const u64 x = (l + step * j) % m;
    ++out[(a * x % m * x + b * x + c) % m];
  }
  return out;
}

inline int order(u64 x, u64 p, int r) {
  u64 pe = 1;
  int e = 0;
  u64 mod = 1;
  for (int i = 0; i < r; ++i) mod *= p;
  x %= mod;
  if (x == 0) return r;
  while (e < r && x % (pe * p) == 0) {
    pe *= p;
    ++e;
  }
  return e;
}

/// #{x in Z_m^{n-1} : Q(x, t_const + sum t_i x_i) = target}.
inline u64 constrained(const std::vector<Term>& terms, u64 constant, int n, u64 m, const std::vector<u64>& t,
                       u64 t_const, u64 target) {
  std::vector<u64> x(static_cast<std::size_t>(n - 1), 0);
  u64 count = 0;
  do {
    std::vector<u64> pt = x;
    u64 z = t_const % m;
    for (std::size_t i = 0; i < x.size(); ++i) z = (z + t[i] * x[i]) % m;
    pt.push_back(z);
    if (eval(terms, constant, pt, m) == target % m) ++count;
  } while (next(x, m));
  return count;
}

}  // namespace oracle
