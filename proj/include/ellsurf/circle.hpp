#pragma once

// Exact points of the real projective line P^1(R) and the queries the rest of
// the library needs on them: sign and multiplicity of a form at a point, and
// isolation of the real roots of a form in circle order.

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ellsurf/binform.hpp"

namespace ellsurf {

/// An irrational real root of a squarefree integral polynomial, isolated in
/// the open interval (lo, hi) whose endpoints are not roots.
struct AlgebraicRoot {
  std::shared_ptr<const Poly> defining;
  Rational lo, hi;
};

struct Infinity {};

class CirclePoint {
 public:
  using Variant = std::variant<Rational, AlgebraicRoot, Infinity>;

  static CirclePoint finite(const Rational& x) { return CirclePoint(Variant(x)); }
  static CirclePoint infinity() { return CirclePoint(Variant(Infinity{})); }

  /// Builds the root of `f` inside (lo, hi). The interval must contain exactly
  /// one real root; if that root is rational a finite point is returned.
  static CirclePoint algebraic(const Poly& f, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("algebraic point: empty interval");
    Poly g = normalized(squarefree_part(f));
    SturmChain chain(g);
    if (g.sign_at(lo) == 0 || g.sign_at(hi) == 0)
      throw std::invalid_argument("algebraic point: interval endpoint is a root");
    if (chain.count_open(lo, hi) != 1)
      throw std::invalid_argument("algebraic point: interval does not isolate exactly one root");
    RootInterval iv = detect_rational(g, {lo, hi});
    if (iv.exact()) return finite(iv.lo);
    return CirclePoint(Variant(AlgebraicRoot{std::make_shared<const Poly>(std::move(g)), lo, hi}));
  }

  /// No checks: `defining` must be squarefree, normalized, with a single
  /// irrational root in (lo, hi) and no root at either endpoint.
  static CirclePoint isolated(std::shared_ptr<const Poly> defining, const Rational& lo, const Rational& hi) {
    return CirclePoint(Variant(AlgebraicRoot{std::move(defining), lo, hi}));
  }

  bool is_finite() const { return std::holds_alternative<Rational>(v_); }
  bool is_algebraic() const { return std::holds_alternative<AlgebraicRoot>(v_); }
  bool is_infinity() const { return std::holds_alternative<Infinity>(v_); }

  const Rational& value() const { return std::get<Rational>(v_); }
  const AlgebraicRoot& root() const { return std::get<AlgebraicRoot>(v_); }
  const Variant& variant() const { return v_; }

  /// Lower/upper rational bounds (equal for finite points). Not for infinity.
  Rational lower() const { return is_finite() ? value() : root().lo; }
  Rational upper() const { return is_finite() ? value() : root().hi; }

  /// Same point with the isolating interval narrowed below `width`.
  CirclePoint refined(const Rational& width) const {
    if (!is_algebraic()) return *this;
    const auto& r = root();
    RootInterval iv = refine_to_width(*r.defining, {r.lo, r.hi}, width);
    return CirclePoint(Variant(AlgebraicRoot{r.defining, iv.lo, iv.hi}));
  }

  /// Single bisection step of the isolating interval.
  CirclePoint bisected() const {
    if (!is_algebraic()) return *this;
    const auto& r = root();
    RootInterval iv = bisect(*r.defining, {r.lo, r.hi});
    return CirclePoint(Variant(AlgebraicRoot{r.defining, iv.lo, iv.hi}));
  }

  std::string to_string() const {
    if (is_infinity()) return "inf";
    if (is_finite()) return ellsurf::to_string(value());
    return "root in (" + ellsurf::to_string(root().lo) + ", " + ellsurf::to_string(root().hi) + ")";
  }

 private:
  explicit CirclePoint(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Distinct points in the cyclic order of P^1(R): ascending reals, then
/// infinity.
class CircleOrder {
 public:
  CircleOrder() = default;
  explicit CircleOrder(std::vector<CirclePoint> pts) : pts_(std::move(pts)) {}

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const CirclePoint& operator[](std::size_t i) const { return pts_.at(i); }
  const CirclePoint& next(std::size_t i) const { return pts_.at((i + 1) % pts_.size()); }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }
  const std::vector<CirclePoint>& points() const { return pts_; }

 private:
  std::vector<CirclePoint> pts_;
};

namespace detail {

inline bool algebraic_equal(const AlgebraicRoot& a, const AlgebraicRoot& b) {
  Rational lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (!(lo < hi)) return false;
  Poly g = gcd(*a.defining, *b.defining);
  if (g.degree() < 1) return false;
  // The intersection endpoints are non-roots of both defining polynomials'
  // common factor, so an open count is exact.
  return SturmChain(g).count_open(lo, hi) > 0;
}

/// Sign of the affine polynomial G at an isolated irrational root. A shared
/// root is detected by gcd; otherwise the interval is bisected until G has
/// constant sign on it.
inline int sign_at_root(const Poly& G, const AlgebraicRoot& r) {
  if (G.is_zero()) return 0;
  Poly h = gcd(G, *r.defining);
  if (h.degree() >= 1 && SturmChain(h).count_open(r.lo, r.hi) > 0) return 0;
  Poly gs = squarefree_part(G);
  if (gs.degree() == 0) return sign(G.leading());
  SturmChain chain(gs);
  RootInterval iv{r.lo, r.hi};
  while (gs.sign_at(iv.lo) == 0 || gs.sign_at(iv.hi) == 0 || chain.count_open(iv.lo, iv.hi) > 0)
    iv = bisect(*r.defining, iv);
  return G.sign_at(iv.lo);
}

}  // namespace detail

inline bool same_point(const CirclePoint& a, const CirclePoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  if (a.is_finite() && b.is_finite()) return a.value() == b.value();
  if (a.is_finite() != b.is_finite()) return false;
  return detail::algebraic_equal(a.root(), b.root());
}

/// -1, 0, +1 in the order ascending reals then infinity.
inline int compare(CirclePoint a, CirclePoint b) {
  if (a.is_infinity() || b.is_infinity()) {
    if (a.is_infinity() && b.is_infinity()) return 0;
    return a.is_infinity() ? 1 : -1;
  }
  if (a.is_finite() && b.is_finite()) return a.value() < b.value() ? -1 : (a.value() == b.value() ? 0 : 1);
  if (a.is_algebraic() && b.is_algebraic() && same_point(a, b)) return 0;
  // Distinct points: refine until the enclosures separate.
  for (;;) {
    if (a.upper() < b.lower()) return -1;
    if (b.upper() < a.lower()) return 1;
    if (a.is_finite() && b.is_algebraic()) {
      const auto& r = b.root();
      int s = r.defining->sign_at(a.value());
      if (s != 0 && a.value() > r.lo && a.value() < r.hi)
        return s == r.defining->sign_at(r.lo) ? -1 : 1;
    }
    if (a.is_algebraic() && b.is_finite()) return -compare(b, a);
    if (a.is_algebraic()) a = a.bisected();
    if (b.is_algebraic()) b = b.bisected();
  }
}

/// Sign of g at c, using the representative (c, 1) for finite points and
/// (1, 0) at infinity.
inline int sign_at(const BinForm& g, const CirclePoint& c) {
  if (c.is_infinity()) return sign(g.value_at_infinity());
  Poly G = g.affine();
  if (c.is_finite()) return G.sign_at(c.value());
  return detail::sign_at_root(G, c.root());
}

/// Multiplicity of c as a root of the nonzero form g.
inline int valuation_at(const BinForm& g, const CirclePoint& c) {
  if (g.is_zero()) throw std::invalid_argument("valuation_at: zero form");
  if (c.is_infinity()) return g.v_exponent();
  Poly G = g.affine();
  if (c.is_finite()) {
    int m = 0;
    Poly lin = Poly::linear_root(c.value());
    for (;;) {
      auto [q, r] = divmod(G, lin);
      if (!r.is_zero()) return m;
      G = std::move(q);
      ++m;
    }
  }
  int m = 0;
  for (Poly d = G; !d.is_zero(); d = d.derivative()) {
    if (detail::sign_at_root(d, c.root()) != 0) return m;
    ++m;
  }
  return m;
}

/// All distinct real roots of f on P^1(R), in circle order. Rational roots
/// are returned as finite points.
inline CircleOrder isolate_real_roots(const BinForm& f) {
  if (f.is_zero()) throw std::invalid_argument("isolate_real_roots: zero form");
  std::vector<CirclePoint> pts;
  Poly F = f.affine();
  if (F.degree() >= 1) {
    Poly g = normalized(squarefree_part(F));
    auto shared = std::make_shared<const Poly>(g);
    for (RootInterval iv : isolate_intervals(g)) {
      iv = detect_rational(g, iv);
      if (iv.exact())
        pts.push_back(CirclePoint::finite(iv.lo));
      else
        pts.push_back(CirclePoint::isolated(shared, iv.lo, iv.hi));
    }
  }
  if (f.v_exponent() > 0) pts.push_back(CirclePoint::infinity());
  return CircleOrder(std::move(pts));
}

}  // namespace ellsurf
