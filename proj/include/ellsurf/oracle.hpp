#pragma once

// Independent computation of the mod-2 homology of X(R) from a cell complex.
//
// The base circle is cut at every real root of Δ, at one sample per arc, and
// at infinity (read in the chart w = v/u). Over each slice the real fiber of
// y^2 = x^3 + P x + Q is described by its real roots, ordered along x, plus
// the point at infinity I of the fiber; consecutive fiber points are joined
// by an upper and a lower edge when x^3 + P x + Q > 0 between them. Over each
// strip between two slices, the root curves and the section at infinity are
// horizontal edges and the upper and lower sheets between them are faces.
// None of this uses the rules that the main pipeline derives from the signs
// of q and Δ.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ellsurf/real_topology.hpp"

namespace ellsurf {

/// One real root of the fiber cubic: exact (lo == hi) or isolated in (lo, hi).
struct FiberRoot {
  Rational lo, hi;
  int multiplicity = 1;
};

struct FiberSlice {
  CirclePoint where = CirclePoint::infinity();
  bool singular = false;
  std::vector<FiberRoot> roots;  // ascending in x
  std::vector<bool> joined;      // joined[j]: edges between fiber point j and j + 1 (the last is I)

  std::size_t points() const { return roots.size() + 1; }

  std::string describe() const {
    std::ostringstream os;
    os << where.to_string() << (singular ? " singular:" : ":");
    for (std::size_t j = 0; j < points(); ++j) {
      if (j < roots.size()) {
        const auto& r = roots[j];
        os << " x" << j;
        if (r.multiplicity > 1) os << "^" << r.multiplicity;
        os << (r.lo == r.hi ? "=" + to_string(r.lo) : " in (" + to_string(r.lo) + ", " + to_string(r.hi) + ")");
      } else {
        os << " I";
      }
      if (j + 1 < points()) os << (joined[j] ? " ~" : " |");
    }
    return os.str();
  }
};

struct OracleTopology {
  int h0 = 0, h1 = 0, h2 = 0, chi = 0;
  int vertices = 0, edges = 0, faces = 0;
  std::vector<FiberSlice> slices;

  std::string trace() const {
    std::string s;
    for (const auto& sl : slices) s += sl.describe() + "\n";
    return s;
  }
};

namespace detail {

/// Dense GF(2) matrix, rows packed in 64-bit words.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u; }
  std::size_t rows() const { return words_ ? bits_.size() / words_ : 0; }
  std::size_t cols() const { return cols_; }

  std::size_t rank() const {
    std::vector<std::uint64_t> m = bits_;
    std::size_t n = rows(), rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < n; ++c) {
      std::size_t w = c / 64;
      std::uint64_t bit = std::uint64_t{1} << (c % 64);
      std::size_t piv = rank;
      while (piv < n && !(m[piv * words_ + w] & bit)) ++piv;
      if (piv == n) continue;
      if (piv != rank)
        std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv * words_),
                         m.begin() + static_cast<std::ptrdiff_t>((piv + 1) * words_),
                         m.begin() + static_cast<std::ptrdiff_t>(rank * words_));
      for (std::size_t r = 0; r < n; ++r)
        if (r != rank && (m[r * words_ + w] & bit))
          for (std::size_t k = 0; k < words_; ++k) m[r * words_ + k] ^= m[rank * words_ + k];
      ++rank;
    }
    return rank;
  }

 private:
  std::size_t cols_, words_;
  std::vector<std::uint64_t> bits_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) n += find(i) == i;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Rational strictly between two fiber points (hi of the left, lo of the
/// right); a shared isolating endpoint is never a root.
inline Rational separating_point(const Rational& left_hi, const Rational& right_lo) {
  return left_hi < right_lo ? simplest_in_open(left_hi, right_lo) : left_hi;
}

/// Fiber over a point where P and Q are rational.
inline FiberSlice rational_slice(const CirclePoint& where, const Rational& P, const Rational& Q) {
  FiberSlice s;
  s.where = where;
  Poly f(std::vector<Rational>{Q, P, Rational(0), Rational(1)});
  Poly g = gcd(f, f.derivative());
  if (g.degree() >= 2) throw std::logic_error("oracle: triple root in the fiber over " + where.to_string());
  Poly sqf = squarefree_part(f);
  for (RootInterval iv : isolate_intervals(sqf)) {
    iv = detect_rational(normalized(sqf), iv);
    int mult = 1;
    if (g.degree() == 1 && iv.exact() && g.sign_at(iv.lo) == 0) mult = 2;
    s.roots.push_back({iv.lo, iv.hi, mult});
  }
  s.singular = g.degree() == 1;
  for (std::size_t j = 0; j + 1 < s.roots.size(); ++j)
    s.joined.push_back(f.sign_at(separating_point(s.roots[j].hi, s.roots[j + 1].lo)) > 0);
  s.joined.push_back(true);  // f > 0 beyond the largest root
  return s;
}

/// Interval quotient a / b for an interval b not containing 0.
inline std::pair<Rational, Rational> interval_div(const std::pair<Rational, Rational>& a,
                                                  const std::pair<Rational, Rational>& b) {
  Rational c[4] = {a.first / b.first, a.first / b.second, a.second / b.first, a.second / b.second};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

/// Nodal fiber over an irrational root c of Δ. The double root of
/// x^3 + P x + Q is -3Q / (2P) and the simple one is -2 times it; both are
/// enclosed by interval arithmetic over a shrinking isolating interval of c.
inline FiberSlice algebraic_nodal_slice(CirclePoint c, const BinForm& p, const BinForm& q) {
  Poly pa = p.affine(), qa = q.affine();
  for (;;) {
    auto P = eval_interval(pa, c.lower(), c.upper());
    auto Q = eval_interval(qa, c.lower(), c.upper());
    if (sgn(P.first) * sgn(P.second) > 0) {
      auto a = interval_div({Rational(-3) * Q.second, Rational(-3) * Q.first}, {2 * P.first, 2 * P.second});
      std::pair<Rational, Rational> b{Rational(-2) * a.second, Rational(-2) * a.first};
      FiberRoot dbl{a.first, a.second, 2}, simple{b.first, b.second, 1};
      bool ordered = b.second < a.first, reversed = a.second < b.first;
      if (ordered || reversed) {
        FiberSlice s;
        s.where = c;
        s.singular = true;
        s.roots = ordered ? std::vector<FiberRoot>{simple, dbl} : std::vector<FiberRoot>{dbl, simple};
        Rational x = simplest_in_open(s.roots[0].hi, s.roots[1].lo);
        // f(x) = x^3 + P x + Q over the enclosures of P and Q.
        Rational x3 = x * x * x;
        Rational px_lo = std::min(P.first * x, P.second * x), px_hi = std::max(P.first * x, P.second * x);
        Rational lo = x3 + px_lo + Q.first, hi = x3 + px_hi + Q.second;
        if (lo > 0 || hi < 0) {
          s.joined = {lo > 0, true};
          return s;
        }
      }
    }
    c = c.bisected();
  }
}

/// Index of the fiber point reached by curve i of a strip with m roots when
/// it lands on slice s (curve m is the section at infinity).
inline std::size_t land(const FiberSlice& s, std::size_t m, std::size_t i) {
  if (i == m) return s.roots.size();
  if (!s.singular) {
    if (s.roots.size() != m) throw std::logic_error("oracle: root count jumps at smooth slice " + s.where.to_string());
    return i;
  }
  // Expand the slice roots by multiplicity.
  std::vector<std::size_t> expanded;
  for (std::size_t j = 0; j < s.roots.size(); ++j)
    for (int r = 0; r < s.roots[j].multiplicity; ++r) expanded.push_back(j);
  if (expanded.size() != 3) throw std::logic_error("oracle: fiber over " + s.where.to_string() + " is not nodal");
  if (m == 3) return expanded[i];
  // One real root: the double root came from a conjugate pair.
  for (std::size_t j = 0; j < s.roots.size(); ++j)
    if (s.roots[j].multiplicity == 1) return j;
  throw std::logic_error("oracle: no simple root at " + s.where.to_string());
}

inline std::vector<CirclePoint> slice_points(const FiberClassification& fc, int extra_samples) {
  std::vector<CirclePoint> roots;
  for (const auto& f : fc.fibers)
    if (f.is_real) roots.push_back(f.point());
  std::vector<CirclePoint> pts = roots;
  if (roots.empty()) pts.push_back(CirclePoint::finite(0));
  for (std::size_t i = 0; i < roots.size(); ++i) pts.push_back(arc_sample(roots[i], roots[(i + 1) % roots.size()]));
  bool has_inf = std::any_of(pts.begin(), pts.end(), [](const CirclePoint& c) { return c.is_infinity(); });
  if (!has_inf) pts.push_back(CirclePoint::infinity());
  std::sort(pts.begin(), pts.end(), [](const CirclePoint& a, const CirclePoint& b) { return compare(a, b) < 0; });
  for (int round = 0; round < extra_samples; ++round) {
    std::vector<CirclePoint> more;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      more.push_back(pts[i]);
      const CirclePoint& next = pts[(i + 1) % pts.size()];
      // The gap after the last point wraps from infinity to the first point.
      more.push_back(arc_sample(pts[i], next));
    }
    std::sort(more.begin(), more.end(), [](const CirclePoint& a, const CirclePoint& b) { return compare(a, b) < 0; });
    pts = std::move(more);
  }
  return pts;
}

}  // namespace detail

/// (h0, h1, χ) of X(R) from the cell complex. `extra_samples` rounds of
/// additional smooth slices (one per gap each round) refine the complex
/// without changing the answer.
inline OracleTopology oracle_topology(const WeierstrassTriple& t, const FiberClassification& fc, int extra_samples = 0) {
  if (auto bad = detail::non_nodal_real(fc); !bad.empty()) throw NotRealGeneric(std::move(bad));
  OracleTopology out;
  for (const CirclePoint& c : detail::slice_points(fc, extra_samples)) {
    if (c.is_infinity())
      out.slices.push_back(detail::rational_slice(c, t.p().value_at_infinity(), t.q().value_at_infinity()));
    else if (c.is_finite())
      out.slices.push_back(detail::rational_slice(c, t.p().affine().eval(c.value()), t.q().affine().eval(c.value())));
    else
      out.slices.push_back(detail::algebraic_nodal_slice(c, t.p(), t.q()));
  }
  const auto& slices = out.slices;
  std::size_t n = slices.size();
  bool odd = t.k() % 2 == 1;

  // Vertices: fiber points of every slice.
  std::vector<std::size_t> vbase(n);
  std::size_t V = 0;
  for (std::size_t i = 0; i < n; ++i) {
    vbase[i] = V;
    V += slices[i].points();
  }

  struct Edge {
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  // Fiber edges: fedge[i][j] is the upper edge between points j and j+1 of
  // slice i (the lower one follows it), or npos.
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> fedge(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < slices[i].points(); ++j) {
      if (!slices[i].joined[j]) {
        fedge[i].push_back(none);
        continue;
      }
      fedge[i].push_back(edges.size());
      edges.push_back({vbase[i] + j, vbase[i] + j + 1});
      edges.push_back({vbase[i] + j, vbase[i] + j + 1});
    }

  // Fiber path between points a <= b on the upper (side 0) or lower (side 1) sheet.
  auto path = [&](std::size_t i, std::size_t a, std::size_t b, int side) {
    std::vector<std::size_t> es;
    for (std::size_t j = a; j < b; ++j) {
      if (fedge[i][j] == none)
        throw std::logic_error("oracle: sheet boundary leaves the real fiber over " + slices[i].where.to_string());
      es.push_back(fedge[i][j] + static_cast<std::size_t>(side));
    }
    return es;
  };

  std::vector<std::vector<std::size_t>> faces;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    const FiberSlice& left = slices[i];
    const FiberSlice& right = slices[j];
    const FiberSlice& smooth = !left.singular ? left : right;
    if (smooth.singular) throw std::logic_error("oracle: two adjacent singular slices");
    std::size_t m = smooth.roots.size();
    // Horizontal edges: root curves 0..m-1 and the section at infinity m.
    std::vector<std::size_t> curve(m + 1), at_left(m + 1), at_right(m + 1);
    for (std::size_t c = 0; c <= m; ++c) {
      at_left[c] = detail::land(left, m, c);
      at_right[c] = detail::land(right, m, c);
      curve[c] = edges.size();
      edges.push_back({vbase[i] + at_left[c], vbase[j] + at_right[c]});
    }
    // Leaving infinity towards the first finite slice the affine coordinate
    // is negative, and for odd k the chart change y' = w^(3k) y swaps sheets.
    int flip_left = left.where.is_infinity() && odd ? 1 : 0;
    for (std::size_t c = 0; c < m; ++c) {
      if (!smooth.joined[c]) continue;
      for (int side = 0; side < 2; ++side) {
        std::vector<std::size_t> bd{curve[c], curve[c + 1]};
        for (auto e : path(i, at_left[c], at_left[c + 1], side ^ flip_left)) bd.push_back(e);
        for (auto e : path(j, at_right[c], at_right[c + 1], side)) bd.push_back(e);
        faces.push_back(std::move(bd));
      }
    }
  }

  std::size_t E = edges.size(), F = faces.size();
  detail::Gf2Matrix d1(E, V), d2(F, E);
  detail::UnionFind uf(V);
  for (std::size_t e = 0; e < E; ++e) {
    d1.flip(e, edges[e].a);
    d1.flip(e, edges[e].b);
    uf.unite(edges[e].a, edges[e].b);
  }
  for (std::size_t f = 0; f < F; ++f)
    for (auto e : faces[f]) d2.flip(f, e);

  // ∂1 ∘ ∂2 = 0.
  for (std::size_t f = 0; f < F; ++f) {
    std::vector<int> acc(V, 0);
    for (std::size_t e = 0; e < E; ++e)
      if (d2.get(f, e)) {
        acc[edges[e].a] ^= 1;
        acc[edges[e].b] ^= 1;
      }
    if (std::any_of(acc.begin(), acc.end(), [](int x) { return x != 0; }))
      throw std::logic_error("oracle: boundary of a face is not a cycle");
  }

  int r1 = static_cast<int>(d1.rank()), r2 = static_cast<int>(d2.rank());
  out.vertices = static_cast<int>(V);
  out.edges = static_cast<int>(E);
  out.faces = static_cast<int>(F);
  out.h0 = static_cast<int>(V) - r1;
  out.h1 = static_cast<int>(E) - r1 - r2;
  out.h2 = static_cast<int>(F) - r2;
  out.chi = out.vertices - out.edges + out.faces;
  if (out.h0 != static_cast<int>(uf.classes()))
    throw std::logic_error("oracle: rank and union-find disagree on components");
  if (out.h2 != out.h0) throw std::logic_error("oracle: complex is not a closed surface (h2 != h0)\n" + out.trace());
  if (out.h1 != 2 * out.h0 - out.chi) throw std::logic_error("oracle: Euler characteristic mismatch");
  return out;
}

inline OracleTopology oracle_topology(const WeierstrassTriple& t, int extra_samples = 0) {
  return oracle_topology(t, classify_fibers(t), extra_samples);
}

struct OracleVerdict {
  bool agree = false;
  int main_h0 = 0, main_h1 = 0, main_chi = 0;
  OracleTopology oracle;

  std::string report() const {
    std::ostringstream os;
    os << "main (h0, h1, chi) = (" << main_h0 << ", " << main_h1 << ", " << main_chi << "), oracle = ("
       << oracle.h0 << ", " << oracle.h1 << ", " << oracle.chi << ")";
    if (!agree) os << "\nslice trace:\n" << oracle.trace();
    return os.str();
  }
};

/// Runs both computations and compares (h0, h1, χ).
inline OracleVerdict compare_with_oracle(const WeierstrassTriple& t, int extra_samples = 0) {
  FiberClassification fc = classify_fibers(t);
  RealTopologyReport main = betti(t, fc);
  OracleVerdict v;
  v.oracle = oracle_topology(t, fc, extra_samples);
  v.main_h0 = main.h0;
  v.main_h1 = main.h1;
  v.main_chi = main.chi_top;
  v.agree = v.main_h0 == v.oracle.h0 && v.main_h1 == v.oracle.h1 && v.main_chi == v.oracle.chi;
  return v;
}

}  // namespace ellsurf
