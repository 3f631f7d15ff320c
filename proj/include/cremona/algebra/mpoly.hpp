#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cremona/algebra/field.hpp"

namespace cremona {

using Exps = std::array<int, 3>;

namespace detail {
constexpr int kExpBits = 21;
constexpr std::uint64_t kExpMask = (std::uint64_t(1) << kExpBits) - 1;
inline std::uint64_t pack(const Exps& e) {
  return (std::uint64_t(e[0]) << (2 * kExpBits)) | (std::uint64_t(e[1]) << kExpBits) | std::uint64_t(e[2]);
}
inline Exps unpack(std::uint64_t k) {
  return {int(k >> (2 * kExpBits)), int((k >> kExpBits) & kExpMask), int(k & kExpMask)};
}
}  // namespace detail

// Sparse polynomial in three variables (x, y, z). Terms are kept in
// lexicographically descending monomial order; homogeneous polynomials are the
// ternary forms of the library.
class Poly {
 public:
  using TermMap = std::map<std::uint64_t, Scalar, std::greater<>>;

  explicit Poly(Field F = Field()) : F_(F) {}

  static Poly constant(const Scalar& s) {
    Poly p(s.field());
    if (!s.is_zero()) p.t_.emplace(0, s);
    return p;
  }
  static Poly monomial(const Scalar& s, const Exps& e) {
    Poly p(s.field());
    if (!s.is_zero()) p.t_.emplace(detail::pack(e), s);
    return p;
  }
  static Poly var(Field F, int i) {
    Exps e{0, 0, 0};
    e[i] = 1;
    return monomial(F.one(), e);
  }
  static Poly x(Field F) { return var(F, 0); }
  static Poly y(Field F) { return var(F, 1); }
  static Poly z(Field F) { return var(F, 2); }

  const Field& field() const { return F_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  const TermMap& terms() const { return t_; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [k, c] : t_) fn(detail::unpack(k), c);
  }

  Scalar coeff(const Exps& e) const {
    auto it = t_.find(detail::pack(e));
    return it == t_.end() ? F_.zero() : it->second;
  }

  // Leading term in lex order.
  Exps lead_exps() const { return detail::unpack(t_.begin()->first); }
  const Scalar& lead_coeff() const { return t_.begin()->second; }

  int total_degree() const {
    int d = -1;
    for_each([&](const Exps& e, const Scalar&) { d = std::max(d, e[0] + e[1] + e[2]); });
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for_each([&](const Exps& e, const Scalar&) { d = std::max(d, e[v]); });
    return d;
  }
  int min_degree_in(int v) const {
    int d = -1;
    for_each([&](const Exps& e, const Scalar&) { d = d < 0 ? e[v] : std::min(d, e[v]); });
    return d;
  }
  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [k, c] : t_) {
      Exps e = detail::unpack(k);
      int s = e[0] + e[1] + e[2];
      if (d >= 0 && s != d) return false;
      d = s;
    }
    return true;
  }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [k, c] : o.t_) add_term(k, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.F_);
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Scalar& s, const Poly& a) {
    if (s.is_zero()) return Poly(a.F_);
    Poly r = a;
    for (auto& [k, c] : r.t_) c *= s;
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.F_ == b.F_ && a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(int n) const {
    Poly r = constant(F_.one()), b = *this;
    while (n) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b *= b;
    }
    return r;
  }

  Scalar eval(const std::array<Scalar, 3>& p) const {
    Scalar r = F_.zero();
    std::array<std::vector<Scalar>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      int d = std::max(0, degree_in(v));
      pw[v].push_back(F_.one());
      for (int i = 1; i <= d; ++i) pw[v].push_back(pw[v].back() * p[v]);
    }
    for_each([&](const Exps& e, const Scalar& c) { r += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]; });
    return r;
  }

  Poly derivative(int v) const {
    Poly r(F_);
    for_each([&](const Exps& e, const Scalar& c) {
      if (e[v] == 0) return;
      Exps f = e;
      --f[v];
      r.add_term(detail::pack(f), F_.of(e[v]) * c);
    });
    return r;
  }

  // Scale so that the lex-first coefficient is 1.
  Poly canonical() const {
    if (is_zero()) return *this;
    return lead_coeff().inv() * *this;
  }

  // Coefficients with respect to variable v: result[i] is the coefficient of v^i
  // (a polynomial free of v).
  std::vector<Poly> coefficients_in(int v) const {
    std::vector<Poly> out(std::max(0, degree_in(v) + 1), Poly(F_));
    for_each([&](const Exps& e, const Scalar& c) {
      Exps f = e;
      f[v] = 0;
      out[e[v]].add_term(detail::pack(f), c);
    });
    return out;
  }

  Poly times_monomial(const Exps& e) const {
    Poly r(F_);
    std::uint64_t k = detail::pack(e);
    for (const auto& [kk, c] : t_) r.t_.emplace_hint(r.t_.end(), kk + k, c);
    return r;
  }

  // Exact quotient of monomial-divisible form: divide by v^k.
  Poly shift_down(int v, int k) const {
    Poly r(F_);
    for_each([&](const Exps& e, const Scalar& c) {
      Exps f = e;
      f[v] -= k;
      if (f[v] < 0) fail(ErrorKind::Precondition, "shift_down below zero");
      r.add_term(detail::pack(f), c);
    });
    return r;
  }

  // Set variable v to 1.
  Poly dehomogenize(int v) const {
    Poly r(F_);
    for_each([&](const Exps& e, const Scalar& c) {
      Exps f = e;
      f[v] = 0;
      r.add_term(detail::pack(f), c);
    });
    return r;
  }

  // Inverse of dehomogenize for a polynomial free of v, to total degree d.
  Poly homogenize(int v, int d) const {
    Poly r(F_);
    for_each([&](const Exps& e, const Scalar& c) {
      Exps f = e;
      f[v] = d - (e[0] + e[1] + e[2]);
      r.add_term(detail::pack(f), c);
    });
    return r;
  }

  // Printed with lex-descending monomials, e.g. "x*y + x*z - y^2".
  std::string str(const char* names = "xyz") const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for_each([&](const Exps& e, const Scalar& c) {
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[v];
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      bool neg = c.is_rational() && sgn(c.rational()) < 0;
      Scalar a = neg ? -c : c;
      std::string coef = a.str();
      std::string term;
      if (mono.empty())
        term = coef;
      else if (a.is_one())
        term = mono;
      else
        term = coef + "*" + mono;
      if (first)
        out += (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
      first = false;
    });
    return out;
  }

  void add_term(std::uint64_t k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  void check(const Poly& o) const {
    if (F_ != o.F_) fail(ErrorKind::FieldMismatch, "polynomials over " + F_.name() + " and " + o.F_.name());
  }

 private:
  Field F_;
  TermMap t_;
};

// Evaluates f at (g0, g1, g2) inside any commutative ring type R supporting +, *,
// and scalar multiplication; `one` is the unit of R.
template <class R>
R eval_in(const Poly& f, const std::array<R, 3>& g, const R& one) {
  std::array<std::vector<R>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    int d = std::max(0, f.degree_in(v));
    pw[v].push_back(one);
    for (int i = 1; i <= d; ++i) pw[v].push_back(pw[v].back() * g[v]);
  }
  R acc = Scalar(f.field().zero()) * one;
  f.for_each([&](const Exps& e, const Scalar& c) { acc = acc + c * (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]); });
  return acc;
}

// f(g0, g1, g2), nested Horner in x then y so that large intermediate
// results are only ever multiplied by g0 or g1.
inline Poly substitute(const Poly& f, const std::array<Poly, 3>& g) {
  const Field& F = f.field();
  if (F != g[0].field()) fail(ErrorKind::FieldMismatch, "substitute across fields");
  if (f.is_zero()) return f;
  std::map<int, std::map<int, std::vector<std::pair<int, Scalar>>>> rows;
  f.for_each([&](const Exps& e, const Scalar& c) { rows[e[0]][e[1]].emplace_back(e[2], c); });
  std::vector<Poly> pz{Poly::constant(F.one())};
  for (int k = 1; k <= f.degree_in(2); ++k) pz.push_back(pz.back() * g[2]);
  Poly acc(F);
  for (int i = rows.rbegin()->first; i >= 0; --i) {
    acc = acc * g[0];
    auto row = rows.find(i);
    if (row == rows.end()) continue;
    Poly in(F);
    for (int j = row->second.rbegin()->first; j >= 0; --j) {
      in = in * g[1];
      auto cell = row->second.find(j);
      if (cell == row->second.end()) continue;
      for (auto& [k, c] : cell->second) in += c * pz[k];
    }
    acc += in;
  }
  return acc;
}

// Exact division f / g; throws unless g divides f.
inline Poly exact_div(const Poly& f, const Poly& g) {
  if (g.is_zero()) fail(ErrorKind::Precondition, "division by zero polynomial");
  Poly r = f, q(f.field());
  Exps ge = g.lead_exps();
  Scalar ginv = g.lead_coeff().inv();
  while (!r.is_zero()) {
    Exps re = r.lead_exps();
    Exps d{re[0] - ge[0], re[1] - ge[1], re[2] - ge[2]};
    if (d[0] < 0 || d[1] < 0 || d[2] < 0) fail(ErrorKind::Precondition, "inexact polynomial division");
    Poly t = Poly::monomial(r.lead_coeff() * ginv, d);
    q += t;
    r -= t * g;
  }
  return q;
}

inline bool divides(const Poly& g, const Poly& f) {
  try {
    exact_div(f, g);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Precondition) return false;
    throw;
  }
}

// Sum of two forms; both must be homogeneous of the same degree unless one is zero.
inline Poly add_forms(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!a.is_homogeneous() || !b.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "adding non-homogeneous forms");
  if (a.total_degree() != b.total_degree()) fail(ErrorKind::DegreeMismatch, "adding forms of different degree");
  return a + b;
}

// Equal up to a nonzero scalar.
inline bool proportional(const Poly& a, const Poly& b) { return a.canonical() == b.canonical(); }

}  // namespace cremona
