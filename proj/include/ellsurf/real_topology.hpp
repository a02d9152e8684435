#pragma once

// Topology of the real locus X(R) of a real-generic elliptic surface, read
// off from the real nodal fibers and the number of ovals of the smooth fibers
// between them.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

/// Real type of a real singular fiber. I1Minus: the node has two real
/// tangents and the real locus is connected. I1Plus: conjugate tangents, the
/// node is an isolated real point beside an oval.
struct RealFiberType {
  enum class Kind { I1Plus, I1Minus, Other };
  Kind kind = Kind::Other;
  KodairaType kodaira;

  static RealFiberType plus() { return {Kind::I1Plus, KodairaType::I(1)}; }
  static RealFiberType minus() { return {Kind::I1Minus, KodairaType::I(1)}; }
  static RealFiberType other(KodairaType t) { return {Kind::Other, t}; }

  RealFiberType flipped() const {
    if (kind == Kind::I1Plus) return minus();
    if (kind == Kind::I1Minus) return plus();
    return *this;
  }

  std::string name() const {
    switch (kind) {
      case Kind::I1Plus:
        return "I1+";
      case Kind::I1Minus:
        return "I1-";
      case Kind::Other:
        break;
    }
    return kodaira.name();
  }

  friend bool operator==(const RealFiberType& a, const RealFiberType& b) {
    return a.kind == b.kind && a.kodaira == b.kodaira;
  }
};

/// Raised when a real fiber is singular but not nodal.
class NotRealGeneric : public std::domain_error {
 public:
  explicit NotRealGeneric(std::vector<FiberReport> offending)
      : std::domain_error(message(offending)), offending_(std::move(offending)) {}
  const std::vector<FiberReport>& offending() const { return offending_; }

 private:
  static std::string message(const std::vector<FiberReport>& fs) {
    std::string m = "not real-generic: non-nodal real fibers";
    for (const auto& f : fs) m += " " + f.kodaira.name() + " at " + f.point().to_string();
    return m;
  }
  std::vector<FiberReport> offending_;
};

/// I1- iff q > 0 at the node. At a node the cubic x^3 + p x + q has a double
/// root a and q = 2a^3, and the tangent cone there has slopes +-sqrt(3a).
inline RealFiberType real_type_of_nodal(const WeierstrassTriple& t, const CirclePoint& c) {
  if (valuation_at(discriminant(t), c) != 1)
    throw std::invalid_argument("real_type_of_nodal: " + c.to_string() + " is not a simple root of the discriminant");
  return sign_at(t.q(), c) > 0 ? RealFiberType::minus() : RealFiberType::plus();
}

namespace detail {

inline int ovals_from_sign(int delta_sign, const CirclePoint& c) {
  if (delta_sign == 0)
    throw std::invalid_argument("smooth_fiber_components: " + c.to_string() + " is a root of the discriminant");
  return delta_sign < 0 ? 2 : 1;
}

}  // namespace detail

/// Number of ovals of the smooth real fiber over c: two iff Δ(c) < 0.
inline int smooth_fiber_components(const WeierstrassTriple& t, const CirclePoint& c) {
  return detail::ovals_from_sign(sign_at(discriminant(t), c), c);
}

inline bool is_real_generic(const FiberClassification& fc) {
  for (const auto& f : fc.fibers)
    if (f.is_real && f.v_delta != 1) return false;
  return true;
}

inline bool is_real_generic(const WeierstrassTriple& t) { return is_real_generic(classify_fibers(t)); }

struct SingularPoint {
  CirclePoint point;
  RealFiberType type;
};

/// Arc of P^1(R) from singular point `from` to the next one in circle order.
struct Arc {
  std::size_t from = 0, to = 0;
  CirclePoint sample = CirclePoint::infinity();
  int component_count = 1;
};

struct ArcDecomposition {
  std::vector<SingularPoint> singular_points;
  std::vector<Arc> arcs;
  int arc_plus = 0, arc_minus = 0;

  int count(RealFiberType::Kind kind) const {
    return static_cast<int>(std::count_if(singular_points.begin(), singular_points.end(),
                                          [&](const SingularPoint& s) { return s.type.kind == kind; }));
  }
};

namespace detail {

/// Narrows the isolating intervals of a < b until upper(a) < lower(b).
inline void separate(CirclePoint& a, CirclePoint& b) {
  while (!(a.upper() < b.lower())) {
    if (a.is_algebraic()) a = a.bisected();
    if (b.is_algebraic()) b = b.bisected();
  }
}

/// Deterministic sample strictly inside the arc from a to b (circle order).
inline CirclePoint arc_sample(CirclePoint a, CirclePoint b) {
  if (a.is_infinity() && b.is_infinity()) return CirclePoint::finite(0);
  if (a.is_infinity()) return CirclePoint::finite(-simplest_above(-b.lower()));
  if (b.is_infinity()) return CirclePoint::finite(simplest_above(a.upper()));
  if (compare(a, b) >= 0) return CirclePoint::infinity();  // the arc wraps through infinity
  separate(a, b);
  return CirclePoint::finite(simplest_in_open(a.upper(), b.lower()));
}

inline std::vector<FiberReport> non_nodal_real(const FiberClassification& fc) {
  std::vector<FiberReport> bad;
  for (const auto& f : fc.fibers)
    if (f.is_real && f.v_delta != 1) bad.push_back(f);
  return bad;
}

}  // namespace detail

/// Cuts P^1(R) at the real singular fibers. Requires a real-generic triple
/// with at least one real singular fiber.
inline ArcDecomposition arc_decomposition(const WeierstrassTriple& t, const FiberClassification& fc) {
  if (auto bad = detail::non_nodal_real(fc); !bad.empty()) throw NotRealGeneric(std::move(bad));
  ArcDecomposition out;
  // Every real fiber is known to be nodal here, so the type is the sign of q.
  for (const auto& f : fc.fibers)
    if (f.is_real)
      out.singular_points.push_back(
          {f.point(), sign_at(t.q(), f.point()) > 0 ? RealFiberType::minus() : RealFiberType::plus()});
  BinForm delta = discriminant(t);
  std::size_t n = out.singular_points.size();
  if (n == 0) throw std::invalid_argument("arc_decomposition: no real singular fiber");
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    Arc arc;
    arc.from = i;
    arc.to = j;
    arc.sample = detail::arc_sample(out.singular_points[i].point, out.singular_points[j].point);
    arc.component_count = detail::ovals_from_sign(sign_at(delta, arc.sample), arc.sample);
    out.arcs.push_back(arc);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (out.arcs[i].component_count == out.arcs[(i + 1) % n].component_count)
      throw std::logic_error("arc_decomposition: component counts do not alternate at " +
                             out.singular_points[out.arcs[i].to].point.to_string());
  for (const auto& arc : out.arcs) {
    if (arc.component_count != 2) continue;
    auto a = out.singular_points[arc.from].type.kind, b = out.singular_points[arc.to].type.kind;
    if (a == b && a == RealFiberType::Kind::I1Plus) ++out.arc_plus;
    if (a == b && a == RealFiberType::Kind::I1Minus) ++out.arc_minus;
  }
  return out;
}

inline ArcDecomposition arc_decomposition(const WeierstrassTriple& t) { return arc_decomposition(t, classify_fibers(t)); }

/// Closed connected surface: S(g) orientable of genus g, V(q) the connected
/// sum of q projective planes.
struct SurfaceComponent {
  bool orientable = true;
  int genus = 0;

  int h1() const { return orientable ? 2 * genus : genus; }
  int chi() const { return 2 - h1(); }
  std::string name() const { return (orientable ? "S" : "V") + std::to_string(genus); }

  friend bool operator==(const SurfaceComponent& a, const SurfaceComponent& b) {
    return a.orientable == b.orientable && a.genus == b.genus;
  }
};

struct BoundVerdict {
  bool components = true;     // h0 <= 5k
  bool ragsdale_viro = true;  // h1 <= 10k
  bool parity = true;         // h1 even
  bool orientability = true;  // orientable iff k even

  bool ok() const { return components && ragsdale_viro && parity && orientability; }

  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    if (!components) v.emplace_back("h0 <= 5k");
    if (!ragsdale_viro) v.emplace_back("h1 <= 10k");
    if (!parity) v.emplace_back("h1 even");
    if (!orientability) v.emplace_back("orientable iff k even");
    return v;
  }
};

/// Mod-2 Betti numbers and component list of X(R).
struct RealTopologyReport {
  int h0 = 0, h1 = 0, h2 = 0;
  int chi_top = 0;
  bool orientable = true;
  std::vector<SurfaceComponent> components;
  BoundVerdict bounds;
  bool no_real_singular_fiber = false;

  int h_star() const { return h0 + h1 + h2; }
};

inline BoundVerdict check_bounds(const RealTopologyReport& r, int k) {
  BoundVerdict v;
  v.components = r.h0 <= 5 * k;
  v.ragsdale_viro = r.h1 <= 10 * k;
  v.parity = r.h1 % 2 == 0;
  v.orientability = r.orientable == (k % 2 == 0);
  return v;
}

inline RealTopologyReport betti(const WeierstrassTriple& t, const FiberClassification& fc) {
  if (auto bad = detail::non_nodal_real(fc); !bad.empty()) throw NotRealGeneric(std::move(bad));
  bool even = t.k() % 2 == 0;
  RealTopologyReport r;
  r.orientable = even;
  if (fc.real_fibers().empty()) {
    // A circle bundle over the circle for each oval: torus or Klein bottle.
    r.no_real_singular_fiber = true;
    r.h0 = smooth_fiber_components(t, CirclePoint::infinity());
    r.h1 = 2 * r.h0;
    r.components.assign(static_cast<std::size_t>(r.h0), SurfaceComponent{even, even ? 1 : 2});
  } else {
    ArcDecomposition arcs = arc_decomposition(t, fc);
    r.h0 = 1 + arcs.arc_plus;
    r.h1 = 2 + 2 * arcs.arc_minus;
    int chi = arcs.count(RealFiberType::Kind::I1Plus) - arcs.count(RealFiberType::Kind::I1Minus);
    if (chi != 2 * r.h0 - r.h1)
      throw std::logic_error("betti: Euler characteristic " + std::to_string(chi) + " disagrees with 2 h0 - h1 = " +
                             std::to_string(2 * r.h0 - r.h1));
    r.components.assign(static_cast<std::size_t>(r.h0 - 1), SurfaceComponent{true, 0});
    r.components.push_back(even ? SurfaceComponent{true, r.h1 / 2} : SurfaceComponent{false, r.h1});
  }
  r.h2 = r.h0;
  r.chi_top = 2 * r.h0 - r.h1;
  r.bounds = check_bounds(r, t.k());
  return r;
}

inline RealTopologyReport betti(const WeierstrassTriple& t) { return betti(t, classify_fibers(t)); }

}  // namespace ellsurf
