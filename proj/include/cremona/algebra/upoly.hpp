#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cremona/algebra/field.hpp"

namespace cremona {

// Dense univariate polynomial, coefficient i belongs to X^i.
class UPoly {
 public:
  explicit UPoly(Field F = Field()) : F_(F) {}
  UPoly(Field F, std::vector<Scalar> c) : F_(F), c_(std::move(c)) { trim(); }

  static UPoly constant(const Scalar& s) { return UPoly(s.field(), {s}); }
  static UPoly monomial(const Scalar& s, int k) {
    std::vector<Scalar> c(k + 1, s.field().zero());
    c[k] = s;
    return UPoly(s.field(), std::move(c));
  }
  static UPoly var(Field F) { return monomial(F.one(), 1); }

  const Field& field() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : F_.zero(); }
  const Scalar& lead() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  Scalar eval(const Scalar& t) const {
    Scalar r = F_.zero();
    for (int i = degree(); i >= 0; --i) r = r * t + c_[i];
    return r;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<Scalar> c(n, a.F_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(a.F_, std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.F_);
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, a.F_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(a.F_, std::move(c));
  }
  friend UPoly operator*(const Scalar& s, const UPoly& a) {
    UPoly r = a;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.F_ == b.F_ && a.c_ == b.c_; }

  UPoly monic() const {
    if (is_zero()) return *this;
    return lead().inv() * *this;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(F_);
    std::vector<Scalar> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(F_.of(static_cast<long long>(i)) * c_[i]);
    return UPoly(F_, std::move(c));
  }

  // a = q*b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) fail(ErrorKind::Precondition, "polynomial division by zero");
    UPoly r = a;
    int db = b.degree();
    if (r.degree() < db) return {UPoly(a.F_), r};
    std::vector<Scalar> q(r.degree() - db + 1, a.F_.zero());
    Scalar inv = b.lead().inv();
    while (!r.is_zero() && r.degree() >= db) {
      int k = r.degree() - db;
      Scalar f = r.lead() * inv;
      q[k] = f;
      for (int i = 0; i <= db; ++i) r.c_[i + k] -= f * b.c_[i];
      r.trim();
    }
    return {UPoly(a.F_, std::move(q)), r};
  }

  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // base^e mod m.
  static UPoly powmod(UPoly base, mpz_class e, const UPoly& m) {
    UPoly r = UPoly::constant(m.F_.one()) % m;
    base = base % m;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
      base = (base * base) % m;
      e >>= 1;
    }
    return r;
  }

  UPoly squarefree_part() const {
    if (degree() <= 0) return *this;
    UPoly g = gcd(*this, derivative());
    return (*this / g).monic();
  }

  std::string str(char var = 't') const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].str() + ")";
      if (i > 0) out += std::string("*") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field F_;
  std::vector<Scalar> c_;
};

namespace detail {

inline mpz_class eval_mod(const std::vector<mpz_class>& g, const mpz_class& r, const mpz_class& m) {
  mpz_class acc = 0;
  for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) {
    acc = acc * r + g[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

// Distinct roots of a squarefree polynomial over F_p.
inline std::vector<Scalar> roots_prime_squarefree(const UPoly& f) {
  const Field& F = f.field();
  std::uint64_t p = F.modulus();
  std::vector<Scalar> out;
  if (f.degree() <= 0) return out;
  if (p < 256) {
    for (std::uint64_t r = 0; r < p; ++r) {
      Scalar s = F.of(static_cast<long long>(r));
      if (f.eval(s).is_zero()) out.push_back(s);
    }
    return out;
  }
  UPoly x = UPoly::var(F);
  UPoly h = UPoly::gcd(f, UPoly::powmod(x, mpz_class(std::to_string(p)), f) - x);
  std::vector<UPoly> stack{h};
  mpz_class half(std::to_string((p - 1) / 2));
  while (!stack.empty()) {
    UPoly g = stack.back();
    stack.pop_back();
    if (g.degree() <= 0) continue;
    if (g.degree() == 1) {
      out.push_back(-g.coeff(0) / g.coeff(1));
      continue;
    }
    for (long long a = 0;; ++a) {
      UPoly w = UPoly::powmod(x + UPoly::constant(F.of(a)), half, g) - UPoly::constant(F.one());
      UPoly d = UPoly::gcd(g, w);
      if (d.degree() > 0 && d.degree() < g.degree()) {
        stack.push_back(d);
        stack.push_back(g / d);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Distinct rational roots of a squarefree polynomial over Q: integer roots of the
// monic transform are found mod a good prime and Hensel-lifted past the Cauchy bound.
inline std::vector<Scalar> roots_rational_squarefree(const UPoly& f) {
  const Field& F = f.field();
  std::vector<Scalar> out;
  int n = f.degree();
  if (n <= 0) return out;
  if (n == 1) return {-f.coeff(0) / f.coeff(1)};
  // Integral primitive coefficients.
  mpz_class den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> a(n + 1);
  for (int i = 0; i <= n; ++i) {
    mpq_class v = f.coeff(i).rational() * den;
    a[i] = v.get_num();
  }
  // Monic transform g(y) = a_n^{n-1} f(y / a_n).
  mpz_class an = a[n];
  std::vector<mpz_class> g(n + 1);
  mpz_class pw = 1;
  for (int i = n - 1; i >= 0; --i) {
    g[i] = a[i] * pw;
    pw *= an;
  }
  g[n] = 1;
  mpz_class bound = 0;
  for (int i = 0; i < n; ++i) {
    mpz_class v = abs(g[i]);
    if (v > bound) bound = v;
  }
  bound += 1;
  // Choose a prime keeping g squarefree.
  mpz_class p = 4;
  UPoly gp;
  for (;;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    Field Fp = Field::prime(p.get_ui());
    std::vector<Scalar> c;
    for (auto& gi : g) c.push_back(Fp.from_mpz(gi));
    gp = UPoly(Fp, c);
    if (UPoly::gcd(gp, gp.derivative()).degree() == 0) break;
  }
  std::vector<mpz_class> dg(n);
  for (int i = 1; i <= n; ++i) dg[i - 1] = g[i] * i;
  std::uint64_t pu = p.get_ui();
  for (std::uint64_t r0 = 0; r0 < pu; ++r0) {
    if (!gp.eval(gp.field().of(static_cast<long long>(r0))).is_zero()) continue;
    mpz_class r = static_cast<unsigned long>(r0), m = p;
    while (m <= 2 * bound) {
      mpz_class m2 = m * m;
      mpz_class val = eval_mod(g, r, m2), der = eval_mod(dg, r, m2), inv;
      mpz_invert(inv.get_mpz_t(), der.get_mpz_t(), m2.get_mpz_t());
      r = r - val * inv;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m2.get_mpz_t());
      m = m2;
    }
    if (r > m / 2) r -= m;
    mpz_class acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * r + g[i];
    if (acc == 0) {
      mpq_class root(r, an);
      root.canonicalize();
      out.push_back(F.from_mpq(root));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Distinct roots in the base field, sorted.
inline std::vector<Scalar> roots(const UPoly& f) {
  if (f.is_zero()) fail(ErrorKind::Precondition, "roots of the zero polynomial");
  UPoly s = f.squarefree_part();
  return f.field().is_rational() ? detail::roots_rational_squarefree(s) : detail::roots_prime_squarefree(s);
}

inline std::vector<std::pair<Scalar, int>> roots_with_multiplicity(const UPoly& f) {
  std::vector<std::pair<Scalar, int>> out;
  for (const Scalar& r : roots(f)) {
    UPoly lin(f.field(), {-r, f.field().one()});
    UPoly g = f;
    int m = 0;
    for (;;) {
      auto [q, rem] = UPoly::divmod(g, lin);
      if (!rem.is_zero()) break;
      g = q;
      ++m;
    }
    out.emplace_back(r, m);
  }
  return out;
}

// Some k-th root of a in the base field, the smallest by tie-break order.
inline Scalar nth_root(const Scalar& a, int k) {
  const Field& F = a.field();
  if (k == 2) return sqrt_scalar(a);
  std::vector<Scalar> c(k + 1, F.zero());
  c[0] = -a;
  c[k] = F.one();
  auto r = roots(UPoly(F, c));
  if (r.empty()) fail(ErrorKind::FieldExtensionRequired, a.str() + " has no " + std::to_string(k) + "-th root");
  return r.front();
}

}  // namespace cremona
