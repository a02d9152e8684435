#pragma once

#include "ellsurf/weierstrass.hpp"
#include "test_support.hpp"

namespace ellsurf::testing {

/// h = (u^2 - v^2)(u^2 - 4v^2)(u^2 - 9v^2)
inline BinForm w1_h() { return form(6, {-36, 0, 49, 0, -14, 0, 1}); }

/// k = 1, p = -3v^4, q = 2v^6 + h
inline WeierstrassTriple w1() {
  return validate(1, form(4, {-3, 0, 0, 0, 0}), add(BinForm::monomial(0, 6, Rational(2)), w1_h()));
}

inline WeierstrassTriple triple(int k, std::initializer_list<long> p, std::initializer_list<long> q) {
  return validate(k, form(4 * k, p), form(6 * k, q));
}

}  // namespace ellsurf::testing

namespace ellsurf {

inline void PrintTo(const WeierstrassTriple& t, std::ostream* os) {
  *os << "k=" << t.k() << " p=";
  PrintTo(t.p(), os);
  *os << " q=";
  PrintTo(t.q(), os);
}

}  // namespace ellsurf
