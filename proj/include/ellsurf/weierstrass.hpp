#pragma once

// Weierstrass data (k, p, q) of a real elliptic surface with section over
// P^1: y^2 z = x^3 + p x z^2 + q z^3, with p, q forms of degrees 4k and 6k.

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ellsurf/circle.hpp"
#include "ellsurf/factor.hpp"

namespace ellsurf {

/// Valuation of an identically zero section.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

inline std::string valuation_string(int v) { return v == kInfiniteValuation ? "inf" : std::to_string(v); }

enum class InvalidTripleKind { BadDegree, DeltaIdenticallyZero, NonMinimal };

/// Rejection of (k, p, q). For NonMinimal the witness is a point (rational
/// or infinity) when one exists, otherwise a factor of the common gcd.
class InvalidTriple : public std::invalid_argument {
 public:
  InvalidTriple(InvalidTripleKind kind, const std::string& what, std::optional<CirclePoint> point = std::nullopt,
                std::optional<BinForm> factor = std::nullopt)
      : std::invalid_argument(what), kind_(kind), point_(std::move(point)), factor_(std::move(factor)) {}

  InvalidTripleKind kind() const { return kind_; }
  const std::optional<CirclePoint>& witness_point() const { return point_; }
  const std::optional<BinForm>& witness_factor() const { return factor_; }

 private:
  InvalidTripleKind kind_;
  std::optional<CirclePoint> point_;
  std::optional<BinForm> factor_;
};

class WeierstrassTriple;
WeierstrassTriple validate(int k, BinForm p, BinForm q);

class WeierstrassTriple {
 public:
  int k() const { return k_; }
  const BinForm& p() const { return p_; }
  const BinForm& q() const { return q_; }

  friend bool operator==(const WeierstrassTriple& a, const WeierstrassTriple& b) {
    return a.k_ == b.k_ && a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  WeierstrassTriple(int k, BinForm p, BinForm q) : k_(k), p_(std::move(p)), q_(std::move(q)) {}
  friend WeierstrassTriple validate(int k, BinForm p, BinForm q);

  int k_;
  BinForm p_, q_;
};

inline BinForm discriminant(const BinForm& p, const BinForm& q) {
  return add(Rational(4) * p.pow(3), Rational(27) * q.pow(2));
}

/// 4p^3 + 27q^2, a form of degree 12k.
inline BinForm discriminant(const WeierstrassTriple& t) { return discriminant(t.p(), t.q()); }

namespace detail {

/// gcd of f, f', ..., f^(n-1) for affine f; the zero polynomial when f = 0.
inline Poly gcd_with_derivatives(const Poly& f, int n) {
  Poly g;
  Poly d = f;
  for (int i = 0; i < n && !d.is_zero(); ++i, d = d.derivative()) g = gcd(g, d);
  return g;
}

}  // namespace detail

/// Checks degrees, that Δ is not identically zero, and minimality (no point
/// where v(p) >= 4 and v(q) >= 6), over C, without factoring.
inline WeierstrassTriple validate(int k, BinForm p, BinForm q) {
  if (k < 1) throw InvalidTriple(InvalidTripleKind::BadDegree, "k must be a positive integer");
  if (p.degree() != 4 * k || q.degree() != 6 * k)
    throw InvalidTriple(InvalidTripleKind::BadDegree, "p and q must have degrees 4k = " + std::to_string(4 * k) +
                                                          " and 6k = " + std::to_string(6 * k));
  if (discriminant(p, q).is_zero())
    throw InvalidTriple(InvalidTripleKind::DeltaIdenticallyZero, "discriminant 4p^3 + 27q^2 is identically zero");

  // Finite points: common roots of p..p''' and q..q^(5).
  Poly gp = detail::gcd_with_derivatives(p.affine(), 4);
  Poly gq = detail::gcd_with_derivatives(q.affine(), 6);
  Poly g = gcd(gp, gq);
  if (g.degree() >= 1) {
    BinForm factor = BinForm::from_affine(g, g.degree());
    for (const auto& c : isolate_real_roots(factor))
      if (c.is_finite())
        throw InvalidTriple(InvalidTripleKind::NonMinimal,
                            "not minimal: min(3 v(p), 2 v(q)) >= 12 at " +
                                (c.value() == 0 ? std::string("u=0") : "u/v=" + c.to_string()),
                            c);
    throw InvalidTriple(InvalidTripleKind::NonMinimal,
                        "not minimal at the roots of a common factor of degree " + std::to_string(g.degree()),
                        std::nullopt, factor);
  }
  bool p_high = p.is_zero() || p.v_exponent() >= 4;
  bool q_high = q.is_zero() || q.v_exponent() >= 6;
  if (p_high && q_high)
    throw InvalidTriple(InvalidTripleKind::NonMinimal, "not minimal: min(3 v(p), 2 v(q)) >= 12 at v=0",
                        CirclePoint::infinity());
  return WeierstrassTriple(k, std::move(p), std::move(q));
}

/// A ratio of two forms of equal degree, reduced by their gcd and by a common
/// positive rational so the coefficients are coprime integers.
struct FormRatio {
  BinForm numerator, denominator;
};

namespace detail {

inline FormRatio reduce_ratio(const BinForm& num, const BinForm& den) {
  if (den.is_zero()) return {BinForm::monomial(0, 0), BinForm(0)};
  BinForm g = gcd(num, den);
  BinForm n = exact_div(num, g), d = exact_div(den, g);
  std::vector<Rational> all = n.coeffs();
  all.insert(all.end(), d.coeffs().begin(), d.coeffs().end());
  Rational c = content(Poly(all));
  if (d.affine().leading() < 0) c = -c;
  return {Rational(1) / c * n, Rational(1) / c * d};
}

}  // namespace detail

/// Functional invariant in two conventions: the ratio 4p^3 : 27q^2 and the
/// standard 1728 * 4p^3 : Δ.
struct JInvariant {
  FormRatio pq_ratio;
  FormRatio standard;
  bool pq_denominator_zero = false;  // q identically zero
};

inline JInvariant j_invariant(const WeierstrassTriple& t) {
  BinForm four_p3 = Rational(4) * t.p().pow(3);
  BinForm q2 = Rational(27) * t.q().pow(2);
  JInvariant j;
  j.pq_denominator_zero = t.q().is_zero();
  j.pq_ratio = detail::reduce_ratio(four_p3, q2);
  j.standard = detail::reduce_ratio(Rational(1728) * four_p3, discriminant(t));
  return j;
}

/// The C*-action (λ^4 p, λ^6 q), restricted to rational λ.
inline WeierstrassTriple rescale(const WeierstrassTriple& t, const Rational& lambda) {
  if (lambda == 0) throw std::invalid_argument("rescale: lambda must be nonzero");
  Rational l = lambda;
  l.canonicalize();
  Rational l2 = l * l;
  return validate(t.k(), l2 * l2 * t.p(), l2 * l2 * l2 * t.q());
}

/// Canonical representative of the orbit under (μ^2 p, μ^3 q), μ > 0
/// rational: integral coefficients and no prime ρ with ρ^2 | content(p) and
/// ρ^3 | content(q). The sign of q is never changed.
inline WeierstrassTriple normalize(const WeierstrassTriple& t) {
  bool has_p = !t.p().is_zero(), has_q = !t.q().is_zero();
  Rational cp = has_p ? content(t.p().affine()) : Rational(1);
  Rational cq = has_q ? content(t.q().affine()) : Rational(1);
  std::map<Integer, int> primes;
  for (const Integer& n : {Integer(cp.get_num()), Integer(cp.get_den()), Integer(cq.get_num()), Integer(cq.get_den())})
    for (const auto& entry : factorize(n)) primes[entry.first] = 1;
  auto ceil_div = [](int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
  Rational mu(1);
  for (const auto& entry : primes) {
    const Integer& pr = entry.first;
    int e = std::numeric_limits<int>::min();
    if (has_p) e = std::max(e, ceil_div(-padic_valuation(cp, pr), 2));
    if (has_q) e = std::max(e, ceil_div(-padic_valuation(cq, pr), 3));
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), pr.get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    mu *= e >= 0 ? Rational(pe) : Rational(1) / Rational(pe);
  }
  Rational mu2 = mu * mu;
  return validate(t.k(), mu2 * t.p(), mu2 * mu * t.q());
}

/// Kodaira symbol of a singular fiber.
struct KodairaType {
  enum class Family { I, II, III, IV, Istar, IVstar, IIIstar, IIstar };
  Family family = Family::I;
  int n = 1;  // subscript for I_n (n >= 1) and I_n^* (n >= 0)

  static KodairaType I(int n) { return {Family::I, n}; }
  static KodairaType Istar(int n) { return {Family::Istar, n}; }
  static KodairaType of(Family f) { return {f, 0}; }

  int euler_number() const {
    switch (family) {
      case Family::I: return n;
      case Family::II: return 2;
      case Family::III: return 3;
      case Family::IV: return 4;
      case Family::Istar: return n + 6;
      case Family::IVstar: return 8;
      case Family::IIIstar: return 9;
      case Family::IIstar: return 10;
    }
    return 0;
  }

  std::string name() const {
    switch (family) {
      case Family::I: return "I" + std::to_string(n);
      case Family::II: return "II";
      case Family::III: return "III";
      case Family::IV: return "IV";
      case Family::Istar: return "I" + std::to_string(n) + "*";
      case Family::IVstar: return "IV*";
      case Family::IIIstar: return "III*";
      case Family::IIstar: return "II*";
    }
    return "?";
  }

  static KodairaType parse(const std::string& s) {
    if (s == "II") return of(Family::II);
    if (s == "III") return of(Family::III);
    if (s == "IV") return of(Family::IV);
    if (s == "IV*") return of(Family::IVstar);
    if (s == "III*") return of(Family::IIIstar);
    if (s == "II*") return of(Family::IIstar);
    if (s.size() >= 2 && s[0] == 'I') {
      bool star = s.back() == '*';
      std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        int n = std::stoi(digits);
        if (star) return Istar(n);
        if (n >= 1) return I(n);
      }
    }
    throw std::invalid_argument("unknown Kodaira symbol \"" + s + "\"");
  }

  friend bool operator==(const KodairaType& a, const KodairaType& b) {
    return a.family == b.family && (a.family == Family::I || a.family == Family::Istar ? a.n == b.n : true);
  }
};

/// Kodaira type from the valuations at a point where the model is minimal.
/// Throws std::logic_error if the valuations are inconsistent with the table.
inline KodairaType kodaira_from_valuations(int v_p, int v_q, int v_delta) {
  using F = KodairaType::Family;
  auto check = [&](KodairaType t, int expected) {
    if (v_delta != expected)
      throw std::logic_error("valuations (" + valuation_string(v_p) + "," + valuation_string(v_q) + "," +
                             std::to_string(v_delta) + ") inconsistent with type " + t.name());
    return t;
  };
  if (v_delta < 1) throw std::logic_error("kodaira_from_valuations: smooth fiber");
  if (v_p == 0) {
    if (v_q != 0) throw std::logic_error("v_p = 0 with v_q > 0 cannot be singular");
    return KodairaType::I(v_delta);
  }
  if (v_q == 1) return check(KodairaType::of(F::II), 2);
  if (v_p == 1) return check(KodairaType::of(F::III), 3);
  if (v_q == 2) return check(KodairaType::of(F::IV), 4);
  if (v_p == 2 && v_q == 3) {
    if (v_delta < 6) throw std::logic_error("I_n^* with v_delta < 6");
    return KodairaType::Istar(v_delta - 6);
  }
  if (v_q == 3 || v_p == 2) return check(KodairaType::Istar(0), 6);
  if (v_q == 4) return check(KodairaType::of(F::IVstar), 8);
  if (v_p == 3) return check(KodairaType::of(F::IIIstar), 9);
  if (v_q == 5) return check(KodairaType::of(F::IIstar), 10);
  throw std::logic_error("valuations violate minimality");
}

/// Non-real roots of one valuation-homogeneous factor of Δ, reported
/// together.
struct ConjugatePairs {
  int factor = 0;
  int pairs = 0;
};

struct FiberReport {
  std::variant<CirclePoint, ConjugatePairs> location;
  int v_p = 0, v_q = 0, v_delta = 0;
  KodairaType kodaira;
  bool is_real = true;
  int factor = -1;  // index of the factor of Δ this fiber belongs to; -1 at infinity

  const CirclePoint& point() const { return std::get<CirclePoint>(location); }
  /// Number of fibers this report stands for.
  int multiplicity() const { return is_real ? 1 : 2 * std::get<ConjugatePairs>(location).pairs; }
};

struct SurfaceInvariants {
  int k = 0;
  int chi_top = 0;    // 12k
  int h11 = 0;        // 10k
  int b2 = 0;         // 12k - 2
  int euler_sum = 0;  // Σ e over singular fibers
};

struct FiberClassification {
  std::vector<FiberReport> fibers;  // real fibers in circle order, then conjugate pairs
  std::vector<BinForm> factors;     // valuation-homogeneous factors of Δ's finite part
  SurfaceInvariants invariants;

  std::vector<FiberReport> real_fibers() const {
    std::vector<FiberReport> out;
    for (const auto& f : fibers)
      if (f.is_real) out.push_back(f);
    return out;
  }
};

namespace detail {

/// Splits squarefree `s` into coprime pieces on whose roots f has constant
/// multiplicity: pairs (piece, multiplicity). f == 0 gives infinite
/// multiplicity.
inline std::vector<std::pair<Poly, int>> split_by_multiplicity(const Poly& s, const Poly& f) {
  if (f.is_zero()) return {{s, kInfiniteValuation}};
  std::vector<std::pair<Poly, int>> out;
  Poly a = s, d = f;
  for (int j = 0; a.degree() >= 1; ++j, d = d.derivative()) {
    Poly next = gcd(a, d);
    Poly piece = normalized(exact_div(a, next));
    if (piece.degree() >= 1) out.push_back({piece, j});
    a = next;
  }
  return out;
}

}  // namespace detail

/// Kodaira fibers of t from valuations of p, q and Δ. Asserts Σe = 12k.
inline FiberClassification classify_fibers(const WeierstrassTriple& t) {
  FiberClassification out;
  BinForm delta = discriminant(t);
  Poly da = delta.affine();
  Poly pa = t.p().affine(), qa = t.q().affine();

  struct Piece {
    Poly poly;
    int v_delta, v_p, v_q;
  };
  std::vector<Piece> pieces;
  if (da.degree() >= 1) {
    auto yun = squarefree_decomposition(da);
    for (std::size_t m = 0; m < yun.size(); ++m) {
      if (yun[m].degree() < 1) continue;
      for (const auto& [sp, vp] : detail::split_by_multiplicity(yun[m], pa))
        for (const auto& [sq, vq] : detail::split_by_multiplicity(sp, qa))
          pieces.push_back({sq, static_cast<int>(m) + 1, vp, vq});
    }
  }

  std::vector<FiberReport> real, complex;
  for (std::size_t id = 0; id < pieces.size(); ++id) {
    const auto& pc = pieces[id];
    out.factors.push_back(BinForm::from_affine(pc.poly, pc.poly.degree()));
    KodairaType type = kodaira_from_valuations(pc.v_p, pc.v_q, pc.v_delta);
    auto shared = std::make_shared<const Poly>(pc.poly);
    int n_real = 0;
    for (RootInterval iv : isolate_intervals(pc.poly)) {
      iv = detect_rational(pc.poly, iv);
      CirclePoint c = iv.exact() ? CirclePoint::finite(iv.lo) : CirclePoint::isolated(shared, iv.lo, iv.hi);
      real.push_back({c, pc.v_p, pc.v_q, pc.v_delta, type, true, static_cast<int>(id)});
      ++n_real;
    }
    int pairs = (pc.poly.degree() - n_real) / 2;
    if (pairs > 0)
      complex.push_back({ConjugatePairs{static_cast<int>(id), pairs}, pc.v_p, pc.v_q, pc.v_delta, type, false,
                         static_cast<int>(id)});
  }
  int v_inf = delta.v_exponent();
  if (v_inf > 0) {
    int vp = t.p().is_zero() ? kInfiniteValuation : t.p().v_exponent();
    int vq = t.q().is_zero() ? kInfiniteValuation : t.q().v_exponent();
    real.push_back({CirclePoint::infinity(), vp, vq, v_inf, kodaira_from_valuations(vp, vq, v_inf), true, -1});
  }
  std::sort(real.begin(), real.end(),
            [](const FiberReport& a, const FiberReport& b) { return compare(a.point(), b.point()) < 0; });

  int k = t.k();
  out.invariants = {k, 12 * k, 10 * k, 12 * k - 2, 0};
  for (const auto& f : real) out.invariants.euler_sum += f.kodaira.euler_number();
  for (const auto& f : complex) out.invariants.euler_sum += f.multiplicity() * f.kodaira.euler_number();
  out.fibers = std::move(real);
  out.fibers.insert(out.fibers.end(), complex.begin(), complex.end());
  if (out.invariants.euler_sum != out.invariants.chi_top)
    throw std::logic_error("fiber Euler numbers sum to " + std::to_string(out.invariants.euler_sum) + ", expected 12k = " +
                           std::to_string(out.invariants.chi_top));
  return out;
}

}  // namespace ellsurf
