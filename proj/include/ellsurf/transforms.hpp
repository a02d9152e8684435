#pragma once

// The twist (p, -q), the I0*-transformation (a quadratic twist by
// (u - a v)(u - b v)), and a seeded search for surfaces with a prescribed
// number of real components.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsurf/fuzz.hpp"
#include "ellsurf/oracle.hpp"
#include "ellsurf/parallel.hpp"

namespace ellsurf {

inline WeierstrassTriple twist(const WeierstrassTriple& t) { return validate(t.k(), t.p(), -t.q()); }

struct I0StarParams {
  Rational a, b;
};

class InvalidI0StarParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// a != b, and neither is a zero of p, q or Δ. An identically zero p or q
/// imposes nothing.
inline void check_params(const WeierstrassTriple& t, const I0StarParams& params) {
  if (params.a == params.b) throw InvalidI0StarParams("i0star: a and b must differ (both " + to_string(params.a) + ")");
  struct Named {
    const char* name;
    BinForm form;
  };
  for (const Named& f : {Named{"p", t.p()}, Named{"q", t.q()}, Named{"the discriminant", discriminant(t)}}) {
    if (f.form.is_zero()) continue;
    for (const auto& [label, x] : {std::pair{"a", params.a}, std::pair{"b", params.b}})
      if (f.form.affine().sign_at(x) == 0)
        throw InvalidI0StarParams(std::string("i0star: ") + label + " = " + to_string(x) + " is a zero of " + f.name);
  }
}

/// (u - a v)(u - b v)
inline BinForm i0star_factor(const I0StarParams& params) {
  return BinForm::linear_root(params.a) * BinForm::linear_root(params.b);
}

/// (r^2 p, r^3 q) at degree k + 1, with r = (u - a v)(u - b v).
inline WeierstrassTriple i0star_transform(const WeierstrassTriple& t, const I0StarParams& params) {
  check_params(t, params);
  BinForm r = i0star_factor(params);
  return validate(t.k() + 1, r.pow(2) * t.p(), r.pow(3) * t.q());
}

inline WeierstrassTriple iterate_i0star(WeierstrassTriple t, const std::vector<I0StarParams>& steps) {
  for (const auto& s : steps) t = i0star_transform(t, s);
  return t;
}

struct I0StarCheck {
  std::vector<std::string> failures;
  int flipped = 0;  // real nodal fibers whose type changed
  bool ok() const { return failures.empty(); }
};

/// Checks the fiber-level statements of the I0*-transformation: two new I0*
/// fibers at a and b, all other fibers unchanged, Δ_Y = r^6 Δ, Σe = 12(k+1),
/// j unchanged, and real nodal types flipped exactly inside (a, b).
inline I0StarCheck verify_i0star(const WeierstrassTriple& t, const I0StarParams& params, const WeierstrassTriple& ty) {
  I0StarCheck out;
  auto fail = [&](const std::string& m) { out.failures.push_back(m); };
  if (ty.k() != t.k() + 1) fail("k did not increase by one");
  BinForm r = i0star_factor(params);
  if (!(discriminant(ty) == r.pow(6) * discriminant(t))) fail("discriminant is not r^6 times the original");
  JInvariant jx = j_invariant(t), jy = j_invariant(ty);
  if (!(jx.standard.numerator == jy.standard.numerator && jx.standard.denominator == jy.standard.denominator &&
        jx.pq_ratio.numerator == jy.pq_ratio.numerator && jx.pq_ratio.denominator == jy.pq_ratio.denominator))
    fail("j-invariant changed");

  FiberClassification fx = classify_fibers(t), fy = classify_fibers(ty);
  if (fy.invariants.euler_sum != 12 * (t.k() + 1)) fail("Euler numbers do not sum to 12(k+1)");

  CirclePoint pa = CirclePoint::finite(params.a), pb = CirclePoint::finite(params.b);
  std::vector<FiberReport> rest;
  int new_fibers = 0;
  for (const auto& f : fy.real_fibers()) {
    if (same_point(f.point(), pa) || same_point(f.point(), pb)) {
      ++new_fibers;
      int want_p = t.p().is_zero() ? kInfiniteValuation : 2, want_q = t.q().is_zero() ? kInfiniteValuation : 3;
      if (!(f.kodaira == KodairaType::Istar(0)) || f.v_p != want_p || f.v_q != want_q || f.v_delta != 6)
        fail("fiber at " + f.point().to_string() + " is " + f.kodaira.name() + ", not I0* with valuations (2, 3, 6)");
    } else {
      rest.push_back(f);
    }
  }
  if (new_fibers != 2) fail("expected new fibers at a and b, found " + std::to_string(new_fibers));

  auto real_x = fx.real_fibers();
  if (rest.size() != real_x.size()) {
    fail("number of other real fibers changed");
  } else {
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (!same_point(rest[i].point(), real_x[i].point()) || !(rest[i].kodaira == real_x[i].kodaira))
        fail("real fiber at " + real_x[i].point().to_string() + " changed");
  }
  auto pairs = [](const FiberClassification& fc) {
    std::map<std::string, int> m;
    for (const auto& f : fc.fibers)
      if (!f.is_real) m[f.kodaira.name()] += f.multiplicity();
    return m;
  };
  if (pairs(fx) != pairs(fy)) fail("non-real fibers changed");

  CirclePoint lo = CirclePoint::finite(std::min(params.a, params.b)), hi = CirclePoint::finite(std::max(params.a, params.b));
  for (const auto& f : real_x) {
    if (f.v_delta != 1) continue;
    const CirclePoint& c = f.point();
    bool inside = !c.is_infinity() && compare(lo, c) < 0 && compare(c, hi) < 0;
    bool flipped = !(real_type_of_nodal(t, c) == real_type_of_nodal(ty, c));
    if (flipped) ++out.flipped;
    if (flipped != inside)
      fail("real type at " + c.to_string() + (inside ? " should flip but did not" : " flipped outside (a, b)"));
  }
  return out;
}

struct SearchBudget {
  std::uint64_t max_candidates = 20000;
  std::uint64_t rng_seed = 1;
  long coefficient_height_bound = 4;  // roots are drawn from half-integers in [-bound, bound]
};

class SearchNotFound : public std::runtime_error {
 public:
  explicit SearchNotFound(std::uint64_t tried)
      : std::runtime_error("search: no triple found within " + std::to_string(tried) + " candidates") {}
};

struct SearchResult {
  WeierstrassTriple triple;
  std::uint64_t candidate = 0;  // index of the accepted candidate
  RealTopologyReport topology;
  OracleVerdict oracle;
};

namespace detail {

/// Candidate i of a search: the nodal family with g fully split and the
/// number of real roots of h cycling through 6k, 6k - 2, ..., 2.
inline std::optional<WeierstrassTriple> search_candidate(int k, const SearchBudget& budget, std::uint64_t i) {
  fuzz::Rng rng = fuzz::trial_rng(budget.rng_seed, i);
  int h_real = 6 * k - 2 * static_cast<int>(i % static_cast<std::uint64_t>(3 * k));
  BinForm g = fuzz::detail::grid_form(rng, 2 * k, 2 * k, budget.coefficient_height_bound);
  BinForm h = fuzz::detail::grid_form(rng, 6 * k, h_real, budget.coefficient_height_bound);
  long j = fuzz::uniform(rng, -6, 3);
  Rational eps = j >= 0 ? Rational(1L << j) : Rational(1) / Rational(1L << -j);
  if (fuzz::uniform(rng, 0, 1)) eps = -eps;
  try {
    return normalize(fuzz::nodal_family(k, g, h, eps));
  } catch (const InvalidTriple&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Deterministic search for a real-generic triple of degree k whose real
/// locus has exactly `components` components. Candidates are evaluated in
/// batches and the smallest accepted index wins, whatever the thread count.
/// The result is always oracle-verified.
inline SearchResult search_extremal(int k, int components, const SearchBudget& budget, unsigned threads = 1) {
  if (k < 1) throw std::invalid_argument("search: k must be positive");
  if (components < 1) throw std::invalid_argument("search: the real locus is never empty, components must be >= 1");
  if (components > 5 * k)
    throw std::invalid_argument("search: " + std::to_string(components) + " components exceeds the bound h0 <= 5k = " +
                                std::to_string(5 * k));
  if (4 * budget.coefficient_height_bound + 1 < 6 * k)
    throw std::invalid_argument("search: height bound too small for 6k distinct real roots");
  const std::uint64_t batch = 64;
  for (std::uint64_t start = 0; start < budget.max_candidates; start += batch) {
    std::uint64_t n = std::min(batch, budget.max_candidates - start);
    std::vector<std::optional<WeierstrassTriple>> hits(n);
    parallel_for(n, threads, [&](std::size_t off) {
      auto t = detail::search_candidate(k, budget, start + off);
      if (!t) return;
      FiberClassification fc = classify_fibers(*t);
      if (!is_real_generic(fc)) return;
      if (betti(*t, fc).h0 == components) hits[off] = std::move(t);
    });
    for (std::uint64_t off = 0; off < n; ++off) {
      if (!hits[off]) continue;
      const WeierstrassTriple& t = *hits[off];
      OracleVerdict v = compare_with_oracle(t);
      if (!v.agree) throw std::logic_error("search: oracle disagrees on candidate " + std::to_string(start + off) + "\n" + v.report());
      RealTopologyReport r = betti(t);
      if (!r.bounds.ok()) throw std::logic_error("search: bound violated on candidate " + std::to_string(start + off));
      return {t, start + off, r, v};
    }
  }
  throw SearchNotFound(budget.max_candidates);
}

}  // namespace ellsurf
