#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cremona/algebra.hpp"
#include "cremona/mobius.hpp"
#include "cremona/projgeom.hpp"

namespace cremona {

using Triple = std::array<Poly, 3>;

inline Poly jacobian_det(const Triple& f) {
  std::array<std::array<Poly, 3>, 3> d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d[i][j] = f[i].derivative(j);
  return d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0]) +
         d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
}

// A plane birational map: three coprime forms of equal degree, canonically
// scaled so that the lex-first coefficient of the first component is 1.
class BirMap {
 public:
  BirMap() = default;

  explicit BirMap(Triple f, bool check_dominant = true) {
    int d = -1;
    for (auto& c : f) {
      c.check(f[0]);
      if (c.is_zero()) fail(ErrorKind::NotDominant, "zero component");
      if (!c.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "component " + c.str() + " is not a form");
      if (d >= 0 && c.total_degree() != d) fail(ErrorKind::DegreeMismatch, "components of different degree");
      d = c.total_degree();
    }
    if (d == 0) fail(ErrorKind::NotDominant, "constant map");
    Poly g = gcd_forms(std::vector<Poly>{f[0], f[1], f[2]});
    if (g.total_degree() > 0)
      for (auto& c : f) c = exact_div(c, g);
    Scalar s = f[0].lead_coeff().inv();
    for (auto& c : f) c = s * c;
    f_ = std::move(f);
    if (check_dominant && !dominant()) fail(ErrorKind::NotDominant, "Jacobian vanishes identically for " + str());
  }

  static BirMap identity(const Field& F) { return BirMap({Poly::x(F), Poly::y(F), Poly::z(F)}, false); }
  static BirMap from_transform(const ProjTransform& t) { return BirMap(t.forms(), false); }

  const Triple& components() const { return f_; }
  const Poly& operator[](int i) const { return f_[i]; }
  const Field& field() const { return f_[0].field(); }
  int degree() const { return f_[0].total_degree(); }

  std::optional<ProjTransform> as_linear() const {
    if (degree() != 1) return std::nullopt;
    Mat m(field(), 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Exps e{0, 0, 0};
        e[j] = 1;
        m(i, j) = f_[i].coeff(e);
      }
    return ProjTransform(m);
  }

  bool is_identity() const { return *this == identity(field()); }

  Poly jacobian() const { return jacobian_det(f_); }

  // Image of p, or nullopt at a base point.
  std::optional<ProjPoint> apply(const ProjPoint& p) const {
    Vec3 v{f_[0].eval(p.coords()), f_[1].eval(p.coords()), f_[2].eval(p.coords())};
    if (detail::is_zero3(v)) return std::nullopt;
    return ProjPoint(v);
  }
  bool is_base_point(const ProjPoint& p) const { return !apply(p).has_value(); }

  friend bool operator==(const BirMap& a, const BirMap& b) { return a.f_ == b.f_; }
  friend bool operator!=(const BirMap& a, const BirMap& b) { return !(a == b); }

  std::string str() const { return "[" + f_[0].str() + " : " + f_[1].str() + " : " + f_[2].str() + "]"; }

 private:
  bool dominant() const {
    const Field& F = field();
    std::array<std::array<Poly, 3>, 3> d;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[i][j] = f_[i].derivative(j);
    static const long long pts[4][3] = {{1, 2, 3}, {2, -1, 5}, {3, 7, -2}, {-4, 1, 6}};
    for (auto& p : pts) {
      Vec3 v{F.of(p[0]), F.of(p[1]), F.of(p[2])};
      Mat m(F, 3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = d[i][j].eval(v);
      if (!m.det().is_zero()) return true;
    }
    return !jacobian().is_zero();
  }

  Triple f_;
};

// phi o psi, with common factors cancelled.
inline BirMap compose(const BirMap& phi, const BirMap& psi) {
  if (phi.field() != psi.field()) fail(ErrorKind::FieldMismatch, "composing maps over different fields");
  const Triple& g = psi.components();
  return BirMap({substitute(phi[0], g), substitute(phi[1], g), substitute(phi[2], g)});
}

// Left-to-right product: maps[0] o maps[1] o ... .
inline BirMap compose_all(const std::vector<BirMap>& maps, const Field& F) {
  BirMap acc = BirMap::identity(F);
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) acc = compose(*it, acc);
  return acc;
}

inline BirMap compose(const ProjTransform& t, const BirMap& m) { return compose(BirMap::from_transform(t), m); }
inline BirMap compose(const BirMap& m, const ProjTransform& t) { return compose(m, BirMap::from_transform(t)); }

inline bool map_eq(const BirMap& a, const BirMap& b) { return a == b; }

inline std::vector<std::pair<ProjLine, int>> contracted_lines(const BirMap& phi, bool require_full = false) {
  if (phi.degree() < 2) fail(ErrorKind::Precondition, "contracted lines need degree >= 2");
  auto fl = factor_linear(phi.jacobian(), require_full);
  std::vector<std::pair<ProjLine, int>> out;
  for (auto& [l, m] : fl.factors) out.emplace_back(ProjLine::from_form(l), m);
  return out;
}

// Order of vanishing of f at p.
inline int vanishing_order(const Poly& f, const ProjPoint& p) {
  const Field& F = f.field();
  // Move p to (0:0:1) by a transform whose third column is p.
  Vec3 e0{F.one(), F.zero(), F.zero()}, e1{F.zero(), F.one(), F.zero()}, e2{F.zero(), F.zero(), F.one()};
  Vec3 a = e0, b = e1;
  if (!p[2].is_zero()) {
  } else if (!p[1].is_zero()) {
    b = e2;
  } else {
    a = e2;
  }
  ProjTransform t = ProjTransform::from_columns(a, b, p.coords());
  Poly g = substitute(f, t.forms()).dehomogenize(2);
  int ord = -1;
  g.for_each([&](const Exps& e, const Scalar&) {
    int s = e[0] + e[1];
    ord = ord < 0 ? s : std::min(ord, s);
  });
  return ord < 0 ? 1 << 20 : ord;
}

inline int base_point_multiplicity(const BirMap& phi, const ProjPoint& p) {
  int m = 1 << 20;
  for (const auto& c : phi.components()) m = std::min(m, vanishing_order(c, p));
  return m;
}

struct BasePoints {
  std::vector<ProjPoint> points;  // rational proper base points, sorted
  bool complete = true;           // false if some base points may be irrational
};

// Rational common zeros of three forms of equal positive degree without a
// common factor. Zeros are projected from a non-zero point by a resultant, then
// recovered line by line.
inline BasePoints common_zeros(const Triple& f) {
  BasePoints out;
  const Field& F = f[0].field();
  auto vanish = [&](const ProjPoint& p) {
    for (auto& c : f)
      if (!c.eval(p.coords()).is_zero()) return false;
    return true;
  };
  // Move a point off the common zero set to (0:0:1).
  ProjPoint q;
  for (std::uint64_t k = 0;; ++k) {
    std::uint64_t i = k % 7, j = k / 7;
    ProjPoint c(F.enumerate(i), F.enumerate(j), F.one());
    if (!vanish(c)) {
      q = c;
      break;
    }
    if (k > 10000) fail(ErrorKind::SearchExhausted, "no point off the common zeros found");
  }
  ProjTransform t = ProjTransform::from_columns({F.one(), F.zero(), F.zero()}, {F.zero(), F.one(), F.zero()}, q.coords());
  Triple g{substitute(f[0], t.forms()), substitute(f[1], t.forms()), substitute(f[2], t.forms())};
  // Two combinations with a nonzero z^d coefficient and no common factor.
  Vec3 z0{F.zero(), F.zero(), F.one()};
  Poly h1(F), h2(F);
  bool found = false;
  for (long long a = 0; a < 40 && !found; ++a) {
    for (long long b = 0; b < 40 && !found; ++b) {
      Poly c1 = g[0] + Poly::constant(F.of(a)) * g[1] + Poly::constant(F.of(b)) * g[2];
      Poly c2 = g[1] + Poly::constant(F.of(a + b + 1)) * g[2] + Poly::constant(F.of(2 * a + 1)) * g[0];
      if (c1.eval(z0).is_zero() || c1.is_zero() || c2.is_zero()) continue;
      if (gcd_forms(c1, c2).total_degree() > 0) continue;
      h1 = c1;
      h2 = c2;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::Unsupported, "could not isolate common zeros");
  Poly r = resultant(h1, h2, 2);
  BinaryForm rb = BinaryForm::from_poly(r);
  auto line_roots = rb.roots();
  int split = 0;
  for (auto& lr : line_roots) split += lr.second;
  if (split < rb.degree()) out.complete = false;
  for (auto& [line_root, mult] : line_roots) {
    // Points (x0 : y0 : w) on the line through (0:0:1) and (x0 : y0 : 0).
    const Scalar& x0 = line_root.s;
    const Scalar& y0 = line_root.t;
    std::vector<UPoly> restr;
    for (auto& gi : g) {
      UPoly u(F);
      gi.for_each([&](const Exps& e, const Scalar& c) { u = u + UPoly::monomial(c * x0.pow(e[0]) * y0.pow(e[1]), e[2]); });
      restr.push_back(u);
    }
    UPoly gg(F);
    for (auto& u : restr) gg = UPoly::gcd(gg, u);
    if (gg.degree() <= 0) continue;
    auto ws = roots(gg);
    if (static_cast<int>(ws.size()) < gg.squarefree_part().degree()) out.complete = false;
    for (const Scalar& w : ws) out.points.push_back(t.apply(ProjPoint(x0, y0, w)));
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

inline BasePoints find_base_points(const BirMap& phi) {
  if (phi.degree() <= 1) return {};
  return common_zeros(phi.components());
}

inline std::vector<ProjPoint> proper_base_points(const BirMap& phi, bool require_full = false) {
  BasePoints b = find_base_points(phi);
  if (require_full && !b.complete) fail(ErrorKind::FieldExtensionRequired, "base points of " + phi.str() + " are not all rational");
  return b.points;
}

struct ElementaryQuadratic {
  BirMap map;
  std::array<ProjPoint, 3> base_points;
};

struct QuadCheck {
  std::optional<ElementaryQuadratic> quad;
  ErrorKind reason = ErrorKind::Precondition;  // meaningful when quad is empty
  std::string detail;
};

// Degree 2 with three distinct rational proper base points, read off the
// Jacobian's linear factors.
inline QuadCheck check_elementary_quadratic(const BirMap& phi) {
  QuadCheck out;
  if (phi.degree() != 2) {
    out.reason = ErrorKind::WrongDegree;
    out.detail = "degree " + std::to_string(phi.degree());
    return out;
  }
  Poly j = phi.jacobian();
  auto fl = factor_linear(j);
  bool repeated = false;
  for (auto& [l, m] : fl.factors) repeated = repeated || m > 1;
  if (repeated) {
    out.reason = ErrorKind::InfinitelyNearBasePoints;
    out.detail = "Jacobian has a repeated line";
    return out;
  }
  if (fl.remainder.total_degree() > 0) {
    Poly sq = gcd_forms(std::vector<Poly>{j, j.derivative(0), j.derivative(1), j.derivative(2)});
    out.reason = sq.total_degree() > 0 ? ErrorKind::InfinitelyNearBasePoints : ErrorKind::IrrationalBasePoints;
    out.detail = "Jacobian does not split into rational lines";
    return out;
  }
  std::array<ProjLine, 3> ls{ProjLine::from_form(fl.factors[0].first), ProjLine::from_form(fl.factors[1].first),
                             ProjLine::from_form(fl.factors[2].first)};
  // Base point opposite to each side is the meet of the other two.
  std::array<ProjPoint, 3> bp{meet(ls[1], ls[2]), meet(ls[0], ls[2]), meet(ls[0], ls[1])};
  if (bp[0] == bp[1] || bp[0] == bp[2] || bp[1] == bp[2] || collinear(bp[0], bp[1], bp[2])) {
    out.reason = ErrorKind::InfinitelyNearBasePoints;
    out.detail = "contracted lines are concurrent";
    return out;
  }
  for (auto& p : bp)
    if (!phi.is_base_point(p)) {
      out.reason = ErrorKind::InfinitelyNearBasePoints;
      out.detail = p.str() + " is not a base point";
      return out;
    }
  std::sort(bp.begin(), bp.end());
  out.quad = ElementaryQuadratic{phi, bp};
  return out;
}

inline bool is_elementary_quadratic(const BirMap& phi) { return check_elementary_quadratic(phi).quad.has_value(); }

inline ElementaryQuadratic as_elementary_quadratic(const BirMap& phi) {
  auto c = check_elementary_quadratic(phi);
  if (!c.quad) fail(c.reason, c.detail + " in " + phi.str());
  return *c.quad;
}

inline BirMap standard_involution(const Field& F) {
  Poly x = Poly::x(F), y = Poly::y(F), z = Poly::z(F);
  return BirMap({y * z, z * x, x * y}, false);
}

// A o sigma o A^{-1} with A sending the coordinate triangle to (p, q, r).
inline ElementaryQuadratic quad_from_points(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  if (p == q || p == r || q == r) fail(ErrorKind::CollinearPoints, "repeated base point");
  if (collinear(p, q, r)) fail(ErrorKind::CollinearPoints, p.str() + ", " + q.str() + ", " + r.str() + " are collinear");
  ProjTransform a = ProjTransform::from_columns(p.coords(), q.coords(), r.coords());
  BirMap m = compose(compose(a, standard_involution(p.field())), a.inverse());
  return ElementaryQuadratic{m, {p, q, r}};
}

// Inverse of a map of degree at most 2 with proper base points.
inline BirMap invert(const BirMap& phi) {
  if (auto t = phi.as_linear()) return BirMap::from_transform(t->inverse());
  if (phi.degree() != 2) fail(ErrorKind::Unsupported, "inversion of degree " + std::to_string(phi.degree()) + " needs a step list");
  auto c = check_elementary_quadratic(phi);
  if (!c.quad) fail(ErrorKind::Unsupported, "quadratic map without three proper base points: " + c.detail);
  auto& b = c.quad->base_points;
  BirMap q = quad_from_points(b[0], b[1], b[2]).map;
  auto gamma = compose(phi, q).as_linear();
  if (!gamma) fail(ErrorKind::NotBirational, "map differs from its base-triangle involution by a non-linear factor");
  return compose(q, BirMap::from_transform(gamma->inverse()));
}

// Inverse of a word maps[0] o maps[1] o ... of invertible letters.
inline BirMap invert_word(const std::vector<BirMap>& maps, const Field& F) {
  std::vector<BirMap> inv;
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) inv.push_back(invert(*it));
  return compose_all(inv, F);
}

inline BirMap parse_map(const std::string& text, const Field& F) {
  auto parts = split_literal(text, '[', ']');
  if (parts.size() != 3) fail(ErrorKind::SyntaxError, "map literal needs three components: " + text);
  return BirMap({parse_form(parts[0], F), parse_form(parts[1], F), parse_form(parts[2], F)});
}

}  // namespace cremona
