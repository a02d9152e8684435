#pragma once

// Homogeneous binary forms f(u, v) of a fixed degree d, i.e. sections of
// O(d) on P^1. Entry i of the coefficient list multiplies u^i v^(d-i), so the
// list read as-is is the affine polynomial f(u, 1), and read in reverse it is
// the chart at infinity f(1, w).

#include <stdexcept>
#include <string>
#include <vector>

#include "ellsurf/poly.hpp"

namespace ellsurf {

class BinForm {
 public:
  BinForm() = default;
  explicit BinForm(int degree) : degree_(check_degree(degree)), coeffs_(static_cast<std::size_t>(degree) + 1) {}
  BinForm(int degree, std::vector<Rational> coeffs) : degree_(check_degree(degree)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(degree) + 1)
      throw std::invalid_argument("BinForm of degree " + std::to_string(degree) + " needs " +
                                  std::to_string(degree + 1) + " coefficients, got " +
                                  std::to_string(coeffs_.size()));
  }

  /// Homogenizes an affine polynomial to the given degree.
  static BinForm from_affine(const Poly& f, int degree) {
    if (f.degree() > degree) throw std::invalid_argument("from_affine: polynomial degree exceeds form degree");
    BinForm out(degree);
    for (std::size_t i = 0; i < f.size(); ++i) out.coeffs_[i] = f.coeffs()[i];
    return out;
  }

  /// u^a v^b
  static BinForm monomial(int u_power, int v_power, const Rational& c = Rational(1)) {
    BinForm out(u_power + v_power);
    out.coeffs_[static_cast<std::size_t>(u_power)] = c;
    return out;
  }

  /// u - r v
  static BinForm linear_root(const Rational& r) { return BinForm(1, {-r, Rational(1)}); }

  int degree() const { return degree_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  Poly affine() const { return Poly(coeffs_); }
  Poly infinity_chart() const { return Poly(std::vector<Rational>(coeffs_.rbegin(), coeffs_.rend())); }

  /// Multiplicity of the point (1:0); requires a nonzero form.
  int v_exponent() const {
    if (is_zero()) throw std::invalid_argument("v_exponent of zero form");
    return degree_ - affine().degree();
  }

  /// f(1, 0): the value at infinity for the representative (1, 0).
  const Rational& value_at_infinity() const { return coeffs_.back(); }

  BinForm operator-() const {
    BinForm r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend BinForm operator*(const Rational& s, const BinForm& f) {
    BinForm r = f;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  friend bool operator==(const BinForm& a, const BinForm& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  BinForm pow(unsigned e) const {
    BinForm out = monomial(0, 0);
    BinForm base = *this;
    while (e) {
      if (e & 1u) out = mul(out, base);
      e >>= 1u;
      if (e) base = mul(base, base);
    }
    return out;
  }

  friend BinForm add(const BinForm& a, const BinForm& b) {
    if (a.degree_ != b.degree_)
      throw std::invalid_argument("form add: degree mismatch (" + std::to_string(a.degree_) + " vs " +
                                  std::to_string(b.degree_) + ")");
    BinForm r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }

  friend BinForm mul(const BinForm& a, const BinForm& b) {
    BinForm r(a.degree_ + b.degree_);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  friend BinForm operator+(const BinForm& a, const BinForm& b) { return add(a, b); }
  friend BinForm operator-(const BinForm& a, const BinForm& b) { return add(a, -b); }
  friend BinForm operator*(const BinForm& a, const BinForm& b) { return mul(a, b); }

 private:
  static int check_degree(int d) {
    if (d < 0) throw std::invalid_argument("negative form degree");
    return d;
  }

  int degree_ = 0;
  std::vector<Rational> coeffs_{Rational(0)};
};

enum class FormOp { add, mul };

inline BinForm form_arith(const BinForm& a, const BinForm& b, FormOp op) {
  return op == FormOp::add ? add(a, b) : mul(a, b);
}

/// Normalized (primitive, positive leading u-coefficient) gcd of two forms;
/// the zero form is the identity.
inline BinForm gcd(const BinForm& a, const BinForm& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero forms");
  if (a.is_zero()) return BinForm::from_affine(normalized(b.affine()), b.degree());
  if (b.is_zero()) return BinForm::from_affine(normalized(a.affine()), a.degree());
  Poly g = gcd(a.affine(), b.affine());
  int e = std::min(a.v_exponent(), b.v_exponent());
  return BinForm::from_affine(g, g.degree() + e);
}

/// a / b for a form b dividing a.
inline BinForm exact_div(const BinForm& a, const BinForm& b) {
  if (b.is_zero()) throw std::domain_error("form division by zero");
  if (a.degree() < b.degree()) throw std::logic_error("exact_div: divisor degree too large");
  if (a.is_zero()) return BinForm(a.degree() - b.degree());
  return BinForm::from_affine(exact_div(a.affine(), b.affine()), a.degree() - b.degree());
}

struct SquarefreeSplit {
  BinForm gcd_with_derivative;
  BinForm squarefree_part;
};

/// f = v^e F(u): gcd part gcd(F, F') v^(e-1), squarefree part sqf(F) v^min(e,1).
inline SquarefreeSplit gcd_squarefree(const BinForm& f) {
  if (f.is_zero()) throw std::invalid_argument("gcd_squarefree of zero form");
  Poly F = f.affine();
  int e = f.v_exponent();
  Poly g = gcd(F, F.derivative());
  if (F.degree() == 0) g = Poly::constant(Rational(1));
  Poly s = squarefree_part(F);
  return {BinForm::from_affine(g, g.degree() + std::max(e - 1, 0)),
          BinForm::from_affine(s, s.degree() + std::min(e, 1))};
}

}  // namespace ellsurf
