#pragma once

#include <utility>
#include <vector>

#include "cremona/algebra/modgcd.hpp"
#include "cremona/algebra/mpoly.hpp"
#include "cremona/algebra/upoly.hpp"

namespace cremona {

namespace detail {

// A polynomial in x with coefficients in K[y]; index = power of x.
using YXPoly = std::vector<UPoly>;

inline YXPoly to_yx(const Poly& f) {
  YXPoly out;
  const Field& F = f.field();
  f.for_each([&](const Exps& e, const Scalar& c) {
    if (static_cast<int>(out.size()) <= e[0]) out.resize(e[0] + 1, UPoly(F));
    out[e[0]] = out[e[0]] + UPoly::monomial(c, e[1]);
  });
  return out;
}

inline Poly from_yx(const YXPoly& a, const Field& F) {
  Poly r(F);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j <= a[i].degree(); ++j) r.add_term(pack({int(i), j, 0}), a[i].coeff(j));
  return r;
}

inline void trim_yx(YXPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline UPoly content_yx(const YXPoly& a, const Field& F) {
  UPoly g(F);
  for (const auto& c : a) g = UPoly::gcd(g, c);
  return g;
}

inline YXPoly primitive_yx(const YXPoly& a, const Field& F) {
  UPoly c = content_yx(a, F);
  YXPoly out;
  for (const auto& x : a) out.push_back(x / c);
  trim_yx(out);
  return out;
}

// Pseudo-remainder of a by b (both nonzero, in x over K[y]).
inline YXPoly prem_yx(YXPoly a, const YXPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  const UPoly& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int k = static_cast<int>(a.size()) - 1 - db;
    UPoly la = a.back();
    for (auto& c : a) c = lb * c;
    for (int i = 0; i <= db; ++i) a[i + k] = a[i + k] - la * b[i];
    trim_yx(a);
  }
  return a;
}

// gcd in K[x, y] by the primitive remainder sequence.
inline Poly prs_gcd(const Poly& f, const Poly& g) {
  const Field& F = f.field();
  YXPoly a = to_yx(f), b = to_yx(g);
  trim_yx(a);
  trim_yx(b);
  if (a.empty()) return g;
  if (b.empty()) return f;
  UPoly c = UPoly::gcd(content_yx(a, F), content_yx(b, F));
  a = primitive_yx(a, F);
  b = primitive_yx(b, F);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    YXPoly r = prem_yx(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive_yx(r, F);
  }
  a = primitive_yx(a, F);
  for (auto& x : a) x = c * x;
  return from_yx(a, F);
}

// Modular gcd when it applies; the remainder sequence otherwise. Prime fields
// below 1000 lack evaluation points for the degrees met here.
inline Poly bivariate_gcd(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  const Field& F = f.field();
  std::optional<Poly> h;
  if (F.is_rational())
    h = modgcd::gcd_rationals(f, g);
  else if (F.modulus() >= 1000)
    h = modgcd::gcd_prime_field(f, g);
  return h ? *h : prs_gcd(f, g);
}

}  // namespace detail

// Greatest common divisor of two ternary forms, canonically normalized.
inline Poly gcd_forms(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.canonical();
  if (g.is_zero()) return f.canonical();
  f.check(g);
  if (!f.is_homogeneous() || !g.is_homogeneous())
    fail(ErrorKind::NonHomogeneous, "gcd_forms expects homogeneous operands");
  int a = f.min_degree_in(2), b = g.min_degree_in(2);
  Poly f1 = f.shift_down(2, a).dehomogenize(2), g1 = g.shift_down(2, b).dehomogenize(2);
  Poly h = detail::bivariate_gcd(f1, g1);
  h = h.homogenize(2, h.total_degree());
  Exps zpow{0, 0, std::min(a, b)};
  return h.times_monomial(zpow).canonical();
}

inline Poly gcd_forms(const std::vector<Poly>& fs) {
  if (fs.empty()) fail(ErrorKind::Precondition, "gcd of an empty list");
  Poly g(fs.front().field());
  for (const auto& f : fs) {
    g = gcd_forms(g, f);
    if (g.total_degree() == 0) break;
  }
  return g;
}

}  // namespace cremona
