#pragma once

// Dense univariate polynomials over Q and the Sturm machinery used for exact
// real root isolation. Coefficients are stored in ascending powers.

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/rational.hpp"

namespace ellsurf {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Poly constant(const Rational& a) { return Poly(std::vector<Rational>{a}); }
  /// x - root
  static Poly linear_root(const Rational& root) { return Poly(std::vector<Rational>{-root, Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const {
    assert(!c_.empty());
    return c_.back();
  }

  bool is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.get_den() == 1; });
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Sign of the value at x; integral polynomials are evaluated in Z.
  int sign_at(const Rational& x) const {
    if (c_.empty()) return 0;
    if (!is_integral()) return sign(eval(x));
    // acc = sum c_i a^i b^(n-i) for x = a/b, Horner in place.
    mpz_srcptr a = x.get_num_mpz_t(), b = x.get_den_mpz_t();
    Integer acc = c_.back().get_num(), bpow = 1, term;
    bool dyadic = mpz_popcount(b) == 1;
    mp_bitcnt_t shift = dyadic ? mpz_scan1(b, 0) : 0, total = 0;
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), a);
      if (c_[i] == 0) {
        if (!dyadic) mpz_mul(bpow.get_mpz_t(), bpow.get_mpz_t(), b);
        total += shift;
        continue;
      }
      if (dyadic) {
        total += shift;
        mpz_mul_2exp(term.get_mpz_t(), c_[i].get_num_mpz_t(), total);
        mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), term.get_mpz_t());
      } else {
        mpz_mul(bpow.get_mpz_t(), bpow.get_mpz_t(), b);
        mpz_addmul(acc.get_mpz_t(), c_[i].get_num_mpz_t(), bpow.get_mpz_t());
      }
    }
    return sgn(acc);
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Poly(std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  friend Poly operator*(const Rational& s, const Poly& a) {
    if (s == 0) return {};
    Poly r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned e) const {
    Poly out = constant(Rational(1));
    Poly base = *this;
    while (e) {
      if (e & 1u) out = out * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Quotient and remainder over Q. Throws on division by zero.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quo(a.size() - b.size() + 1);
  const Rational& lb = b.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational f = rem[k + b.size() - 1] / lb;
    quo[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= f * b.coeffs()[j];
  }
  rem.resize(b.size() - 1);
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

/// a / b, which must divide exactly.
inline Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

/// Positive rational c such that a / c has coprime integer coefficients.
inline Rational content(const Poly& a) {
  if (a.is_zero()) return Rational(0);
  Integer num = 0, den = 1;
  for (const auto& x : a.coeffs()) {
    if (x == 0) continue;
    num = gcd(num, Integer(x.get_num()));
    den = lcm(den, Integer(x.get_den()));
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

/// a divided by its (positive) content: integral, primitive, sign preserved.
inline Poly primitive(const Poly& a) {
  if (a.is_zero()) return a;
  return Rational(1) / content(a) * a;
}

/// Primitive with positive leading coefficient.
inline Poly normalized(const Poly& a) {
  Poly p = primitive(a);
  if (!p.is_zero() && p.leading() < 0) p = -p;
  return p;
}

/// gcd over Q, normalized; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  a = normalized(a);
  b = normalized(b);
  while (!b.is_zero()) {
    Poly r = normalized(a % b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly squarefree_part(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_part of zero polynomial");
  if (f.degree() == 0) return Poly::constant(Rational(1));
  return normalized(exact_div(f, gcd(f, f.derivative())));
}

/// Yun's decomposition: result[i] is the product of the irreducible factors of
/// multiplicity exactly i+1 (normalized; constants mean "none").
inline std::vector<Poly> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition of zero polynomial");
  std::vector<Poly> out;
  if (f.degree() == 0) return out;
  Poly d = f.derivative();
  Poly a0 = gcd(f, d);
  Poly b = exact_div(f, a0);
  Poly c = exact_div(d, a0);
  Poly dd = c - b.derivative();
  while (b.degree() > 0) {
    Poly a = gcd(b, dd);
    out.push_back(normalized(a));
    b = exact_div(b, a);
    c = exact_div(dd, a);
    dd = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Sturm sequence of a squarefree polynomial, each member scaled by a
/// positive rational so that signs are untouched.
class SturmChain {
 public:
  explicit SturmChain(const Poly& squarefree) {
    if (squarefree.is_zero()) throw std::invalid_argument("Sturm chain of zero polynomial");
    seq_.push_back(primitive(squarefree));
    if (squarefree.degree() == 0) return;
    seq_.push_back(primitive(squarefree.derivative()));
    while (seq_.back().degree() > 0) {
      Poly r = seq_[seq_.size() - 2] % seq_.back();
      if (r.is_zero()) break;
      seq_.push_back(primitive(-r));
    }
  }

  const Poly& base() const { return seq_.front(); }

  /// Sign variations at x, zeros dropped. At a root of the base polynomial
  /// this equals the right limit.
  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& s : seq_) {
      int v = s.sign_at(x);
      if (v == 0) continue;
      if (last != 0 && v != last) ++count;
      last = v;
    }
    return count;
  }

  int variations_at_infinity(bool positive) const {
    int count = 0, last = 0;
    for (const auto& s : seq_) {
      int v = sign(s.leading());
      if (!positive && (s.degree() % 2 == 1)) v = -v;
      if (last != 0 && v != last) ++count;
      last = v;
    }
    return count;
  }

  /// Number of distinct real roots in the open interval (lo, hi).
  int count_open(const Rational& lo, const Rational& hi) const {
    if (!(lo < hi)) return 0;
    int n = variations(lo) - variations(hi);
    if (base().sign_at(hi) == 0) --n;
    return n;
  }

  int count_real() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  std::vector<Poly> seq_;
};

/// Power of two strictly larger than every |root|.
inline Rational root_bound(const Poly& f) {
  assert(f.degree() >= 1);
  Rational m(0);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    Rational r = abs(f.coeffs()[i] / f.leading());
    if (r > m) m = r;
  }
  Rational b(1);
  while (b <= m + 1) b *= 2;
  return b;
}

/// Either an exact rational root (lo == hi) or an open isolating interval
/// (lo, hi) with f(lo) * f(hi) < 0 for the squarefree f it was isolated from.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
};

namespace detail {

inline void isolate_rec(const SturmChain& chain, const Rational& lo, const Rational& hi,
                        std::vector<RootInterval>& out) {
  int n = chain.count_open(lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate_rec(chain, lo, mid, out);
  if (chain.base().sign_at(mid) == 0) out.push_back({mid, mid});
  isolate_rec(chain, mid, hi, out);
}

}  // namespace detail

/// Moves the endpoints of an isolating interval off roots of f, or collapses
/// it to the exact root when a midpoint lands on it.
inline RootInterval tighten_endpoints(const SturmChain& chain, RootInterval iv) {
  const Poly& f = chain.base();
  while (!iv.exact() && (f.sign_at(iv.lo) == 0 || f.sign_at(iv.hi) == 0)) {
    Rational mid = (iv.lo + iv.hi) / 2;
    if (f.sign_at(mid) == 0) return {mid, mid};
    if (chain.count_open(iv.lo, mid) == 1)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return iv;
}

/// One bisection step on an interval with a sign change.
inline RootInterval bisect(const Poly& f, RootInterval iv) {
  if (iv.exact()) return iv;
  Rational mid = (iv.lo + iv.hi) / 2;
  int sm = f.sign_at(mid);
  if (sm == 0) return {mid, mid};
  if (sm == f.sign_at(iv.lo))
    iv.lo = mid;
  else
    iv.hi = mid;
  return iv;
}

inline RootInterval refine_to_width(const Poly& f, RootInterval iv, const Rational& width) {
  while (!iv.exact() && iv.hi - iv.lo >= width) iv = bisect(f, iv);
  return iv;
}

/// Isolates the distinct real roots of a nonzero polynomial, ascending.
inline std::vector<RootInterval> isolate_intervals(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("isolate_intervals: zero polynomial");
  std::vector<RootInterval> out;
  if (f.degree() < 1) return out;
  Poly g = squarefree_part(f);
  SturmChain chain(g);
  Rational b = root_bound(g);
  detail::isolate_rec(chain, -b, b, out);
  for (auto& iv : out)
    if (!iv.exact()) iv = tighten_endpoints(chain, iv);
  return out;
}

/// Decides whether the single root of squarefree integral `f` in `iv` is
/// rational; if so returns the collapsed interval.
inline RootInterval detect_rational(const Poly& squarefree, RootInterval iv) {
  if (iv.exact()) return iv;
  Poly f = primitive(squarefree);
  Integer lc = abs(f.leading().get_num());
  // Two distinct rationals with denominators <= lc are at least 1/lc^2 apart.
  Rational width(1, lc * lc);
  width.canonicalize();
  iv = refine_to_width(f, iv, width);
  if (iv.exact()) return iv;
  Rational cand = simplest_between(iv.lo, iv.hi);
  if (cand.get_den() <= lc && f.sign_at(cand) == 0) return {cand, cand};
  return iv;
}

/// Interval enclosure [lo, hi] of f over the interval [a, b] (exact rationals,
/// Horner with interval products).
inline std::pair<Rational, Rational> eval_interval(const Poly& f, const Rational& a, const Rational& b) {
  Rational lo(0), hi(0);
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    Rational c1 = lo * a, c2 = lo * b, c3 = hi * a, c4 = hi * b;
    lo = std::min({c1, c2, c3, c4}) + *it;
    hi = std::max({c1, c2, c3, c4}) + *it;
  }
  return {lo, hi};
}

}  // namespace ellsurf
