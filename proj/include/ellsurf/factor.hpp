#pragma once

// Prime factorization of (small to moderate) integers: trial division, then
// Pollard-Brent on what is left. Only used to pick canonical representatives
// of rescaling orbits, where inputs are contents of coefficient lists.

#include <map>
#include <numeric>

#include "ellsurf/rational.hpp"

namespace ellsurf {

namespace detail {

inline bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

inline Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = seed % 1000 + 2, c = seed % 997 + 1, m = 64, g = 1, r = 1, q = 1, x, ys;
  auto step = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = step(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (Integer i = 0; i < m && i < r - k; ++i) {
        y = step(y);
        Integer d = x - y;
        q = q * abs(d) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(Integer(abs(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n < 2) return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    Integer d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorization of |n| (empty for 0 and +-1).
inline std::map<Integer, int> factorize(Integer n) {
  n = abs(n);
  std::map<Integer, int> out;
  if (n < 2) return out;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

/// p-adic valuation of a nonzero rational.
inline int padic_valuation(const Rational& r, const Integer& p) {
  int v = 0;
  Integer n = r.get_num(), d = r.get_den();
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
    d /= p;
    --v;
  }
  return v;
}

}  // namespace ellsurf
