#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cremona/algebra/gcd.hpp"
#include "cremona/algebra/mpoly.hpp"
#include "cremona/algebra/upoly.hpp"

namespace cremona {

// A point of P^1, stored as (s : t) with the first nonzero coordinate 1.
struct ParamPoint {
  Scalar s, t;

  static ParamPoint make(Scalar s, Scalar t) {
    if (s.is_zero() && t.is_zero()) fail(ErrorKind::Precondition, "(0:0) is not a point of P^1");
    if (!s.is_zero()) return {s.field().one(), t / s};
    return {s.field().zero(), t.field().one()};
  }
  static ParamPoint affine(const Scalar& v) { return make(v, v.field().one()); }
  static ParamPoint infinity(const Field& F) { return make(F.one(), F.zero()); }

  friend bool operator==(const ParamPoint& a, const ParamPoint& b) { return a.s == b.s && a.t == b.t; }
  friend bool operator!=(const ParamPoint& a, const ParamPoint& b) { return !(a == b); }
  friend bool operator<(const ParamPoint& a, const ParamPoint& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.t < b.t;
  }
  std::string str() const { return "(" + s.str() + ":" + t.str() + ")"; }
};

// Homogeneous form in (s, t), dense: coefficient i belongs to s^{d-i} t^i.
class BinaryForm {
 public:
  explicit BinaryForm(Field F = Field()) : F_(F), c_{F.zero()} {}
  BinaryForm(Field F, std::vector<Scalar> c) : F_(F), c_(std::move(c)) {
    if (c_.empty()) c_.push_back(F_.zero());
  }

  static BinaryForm zero(const Field& F, int d) { return BinaryForm(F, std::vector<Scalar>(d + 1, F.zero())); }
  static BinaryForm s_var(const Field& F) { return BinaryForm(F, {F.one(), F.zero()}); }
  static BinaryForm t_var(const Field& F) { return BinaryForm(F, {F.zero(), F.one()}); }
  static BinaryForm constant(const Scalar& c) { return BinaryForm(c.field(), {c}); }
  static BinaryForm monomial(const Scalar& c, int i, int j) {
    BinaryForm b = zero(c.field(), i + j);
    b.c_[j] = c;
    return b;
  }

  const Field& field() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& coeff(int i) const { return c_[i]; }
  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }

  Scalar eval(const Scalar& s, const Scalar& t) const {
    int d = degree();
    std::vector<Scalar> sp(d + 1, F_.one()), tp(d + 1, F_.one());
    for (int i = 1; i <= d; ++i) {
      sp[i] = sp[i - 1] * s;
      tp[i] = tp[i - 1] * t;
    }
    Scalar r = F_.zero();
    for (int i = 0; i <= d; ++i) r += c_[i] * sp[d - i] * tp[i];
    return r;
  }
  Scalar eval(const ParamPoint& p) const { return eval(p.s, p.t); }

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() != b.degree()) fail(ErrorKind::DegreeMismatch, "adding binary forms of different degree");
    BinaryForm r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  BinaryForm operator-() const {
    BinaryForm r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + (-b); }
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm r = zero(a.F_, a.degree() + b.degree());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend BinaryForm operator*(const Scalar& s, const BinaryForm& a) {
    BinaryForm r = a;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.F_ == b.F_ && a.c_ == b.c_;
  }

  BinaryForm pow(int n) const {
    BinaryForm r = constant(F_.one()), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

  // The same form viewed as a ternary polynomial in (x, y) = (s, t).
  Poly to_poly() const {
    Poly p(F_);
    int d = degree();
    for (int i = 0; i <= d; ++i) p.add_term(detail::pack({d - i, i, 0}), c_[i]);
    return p;
  }
  static BinaryForm from_poly(const Poly& p, int d) {
    BinaryForm b = zero(p.field(), d);
    p.for_each([&](const Exps& e, const Scalar& c) {
      if (e[2] != 0 || e[0] + e[1] != d) fail(ErrorKind::NonHomogeneous, "not a binary form of degree " + std::to_string(d));
      b.c_[e[1]] = c;
    });
    return b;
  }
  static BinaryForm from_poly(const Poly& p) { return from_poly(p, std::max(0, p.total_degree())); }

  // Exact quotient; throws when g does not divide.
  static BinaryForm exact_div(const BinaryForm& f, const BinaryForm& g) {
    if (f.is_zero()) return zero(f.F_, std::max(0, f.degree() - g.degree()));
    return from_poly(cremona::exact_div(f.to_poly(), g.to_poly()), f.degree() - g.degree());
  }

  // Roots in P^1 with multiplicities; (1:0) counts leading zero coefficients.
  std::vector<std::pair<ParamPoint, int>> roots() const {
    if (is_zero()) fail(ErrorKind::Precondition, "roots of the zero binary form");
    std::vector<std::pair<ParamPoint, int>> out;
    int d = degree(), inf = 0;
    while (inf <= d && c_[inf].is_zero()) ++inf;
    if (inf > 0) out.emplace_back(ParamPoint::infinity(F_), inf);
    // f(r, 1) = sum c_i r^{d-i}; drop the leading zeros.
    std::vector<Scalar> u(d - inf + 1, F_.zero());
    for (int i = inf; i <= d; ++i) u[d - i] = c_[i];
    UPoly up(F_, u);
    for (auto& [r, m] : roots_with_multiplicity(up)) out.emplace_back(ParamPoint::affine(r), m);
    return out;
  }

  std::string str() const { return to_poly().str("stz"); }

 private:
  Field F_;
  std::vector<Scalar> c_;
};

inline BinaryForm gcd_binary(const BinaryForm& a, const BinaryForm& b) {
  Poly g = gcd_forms(a.to_poly(), b.to_poly());
  return BinaryForm::from_poly(g);
}

}  // namespace cremona
