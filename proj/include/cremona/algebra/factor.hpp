#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "cremona/algebra/forms.hpp"
#include "cremona/algebra/gcd.hpp"
#include "cremona/algebra/mpoly.hpp"
#include "cremona/algebra/upoly.hpp"

namespace cremona {

struct LinearFactorization {
  std::vector<std::pair<Poly, int>> factors;  // canonical linear forms, pairwise distinct
  Poly remainder;                             // f = remainder * prod factors^mult, exactly
};

namespace detail {

// Roots gamma of the family f(X, Y, Z) == 0 identically, where the substitution
// places gamma in variable slot `gslot`; coefficients are grouped over the other
// two variables.
inline std::vector<Scalar> common_gamma_roots(const Poly& s, int gslot) {
  const Field& F = s.field();
  std::map<std::pair<int, int>, UPoly> groups;
  int o1 = gslot == 0 ? 1 : 0, o2 = gslot == 2 ? 1 : 2;
  s.for_each([&](const Exps& e, const Scalar& c) {
    auto key = std::make_pair(e[o1], e[o2]);
    auto it = groups.find(key);
    UPoly term = UPoly::monomial(c, e[gslot]);
    if (it == groups.end())
      groups.emplace(key, term);
    else
      it->second = it->second + term;
  });
  UPoly g(F);
  for (auto& [k, u] : groups) g = UPoly::gcd(g, u);
  if (g.is_zero()) fail(ErrorKind::Precondition, "identically vanishing substitution");
  if (g.degree() == 0) return {};
  return roots(g);
}

// Compare term lists in lex order: larger leading monomial first, shorter first.
inline bool linear_order(const Poly& a, const Poly& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first > ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace detail

// All rational linear factors of a nonzero ternary form with multiplicities.
// With require_full, a remainder of positive degree raises FieldExtensionRequired.
inline LinearFactorization factor_linear(const Poly& f, bool require_full = false) {
  if (f.is_zero()) fail(ErrorKind::Precondition, "factor_linear of zero");
  if (!f.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "factor_linear expects a form");
  const Field& F = f.field();
  Poly x = Poly::x(F), y = Poly::y(F), z = Poly::z(F);
  std::vector<Poly> candidates;
  int kz = f.min_degree_in(2);
  if (kz > 0) candidates.push_back(z);
  Poly g = f.shift_down(2, kz);
  if (g.total_degree() > 0) {
    // Restriction to z = 0 as a binary form in (x, y).
    Poly h0(F);
    g.for_each([&](const Exps& e, const Scalar& c) {
      if (e[2] == 0) h0.add_term(detail::pack(e), c);
    });
    BinaryForm b = BinaryForm::from_poly(h0, g.total_degree());
    for (auto& [r, m] : b.roots()) {
      // Root (r.s : r.t) of h0 gives the factor t*x - s*y.
      if (r.t.is_zero()) {
        // factor y + gamma z : substitute y -> -gamma z with gamma in slot y.
        Poly s = substitute(g, {x, -(y * z), z});
        for (const Scalar& gam : detail::common_gamma_roots(s, 1)) candidates.push_back(y + Poly::constant(gam) * z);
      } else {
        // factor x + beta y + gamma z with beta = -s/t: x -> -beta y - gamma z.
        Scalar beta = -(r.s / r.t);
        Poly s = substitute(g, {Poly::constant(-beta) * y - x * z, y, z});
        for (const Scalar& gam : detail::common_gamma_roots(s, 0))
          candidates.push_back(x + Poly::constant(beta) * y + Poly::constant(gam) * z);
      }
    }
  }
  LinearFactorization out;
  Poly rem = f;
  for (auto& l : candidates) {
    Poly lc = l.canonical();
    int m = 0;
    while (rem.total_degree() > 0 && divides(lc, rem)) {
      rem = exact_div(rem, lc);
      ++m;
    }
    if (m > 0) out.factors.emplace_back(lc, m);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return detail::linear_order(a.first, b.first); });
  out.remainder = rem;
  if (require_full && rem.total_degree() > 0)
    fail(ErrorKind::FieldExtensionRequired, "form has a non-split factor " + rem.str());
  return out;
}

namespace detail {

// Fraction-free determinant of a square matrix of polynomials.
inline Poly bareiss_det(std::vector<std::vector<Poly>> m, const Field& F) {
  int n = static_cast<int>(m.size());
  if (n == 0) return Poly::constant(F.one());
  Poly prev = Poly::constant(F.one());
  bool neg = false;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Poly(F);
      std::swap(m[k], m[piv]);
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return neg ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace detail

// Sylvester resultant of f and g with respect to variable v (0, 1, 2 = x, y, z).
inline Poly resultant(const Poly& f, const Poly& g, int v) {
  f.check(g);
  const Field& F = f.field();
  auto a = f.coefficients_in(v), b = g.coefficients_in(v);
  int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  if (m < 0 || n < 0) return Poly(F);
  if (m == 0 && n == 0) return Poly::constant(F.one());
  if (m == 0) return a[0].pow(n);
  if (n == 0) return b[0].pow(m);
  int N = m + n;
  std::vector<std::vector<Poly>> S(N, std::vector<Poly>(N, Poly(F)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S[i][i + j] = a[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S[n + i][i + j] = b[n - j];
  return detail::bareiss_det(std::move(S), F);
}

}  // namespace cremona
