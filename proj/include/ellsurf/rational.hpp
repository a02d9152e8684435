#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellsurf {

using Integer = mpz_class;
using Rational = mpq_class;  // always canonical: lowest terms, denominator > 0

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

/// Parses "n", "-n", "n/d" (d != 0). Surrounding whitespace and a leading '+'
/// are rejected so that documents have a single spelling per value.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    return std::invalid_argument("malformed rational \"" + std::string(text) + "\": " + why);
  };
  if (text.empty()) throw bad("empty");
  auto slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!digits_ok(num, true)) throw bad("bad numerator");
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(Integer{std::string(num)});
    return r;
  }
  if (!digits_ok(den, false)) throw bad("bad denominator");
  Integer d{std::string(den)};
  if (d == 0) throw bad("zero denominator");
  r = Rational(Integer{std::string(num)}, d);
  r.canonicalize();
  return r;
}

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational out(1);
  Rational b = base;
  while (e) {
    if (e & 1u) out *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return out;
}

/// The rational with the smallest denominator in the closed interval [lo, hi]
/// (ties between integers broken toward zero).
inline Rational simplest_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  Integer fl = floor_of(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / inner;
}

/// The simplest rational in the open ray (a, +inf): 0 if a < 0, else floor(a) + 1.
inline Rational simplest_above(const Rational& a) { return a < 0 ? Rational(0) : Rational(floor_of(a) + 1); }

/// The rational with the smallest denominator in the open interval (lo, hi),
/// lo < hi (ties between integers broken toward zero).
inline Rational simplest_in_open(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_in_open: empty interval");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) return -simplest_in_open(-hi, -lo);
  Integer fl = floor_of(lo);
  if (Rational(fl + 1) < hi) return Rational(fl + 1);
  // lo, hi in [fl, fl + 1]: write x = fl + 1/y with y > 1.
  Rational y_lo = 1 / (hi - fl);
  Rational y = Rational(fl) == lo ? simplest_above(y_lo) : simplest_in_open(y_lo, 1 / (lo - fl));
  return Rational(fl) + 1 / y;
}

}  // namespace ellsurf
