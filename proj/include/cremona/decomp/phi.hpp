#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cremona/decomp/conic_group.hpp"

namespace cremona {

using PointFilter = std::function<bool(const ProjPoint&)>;

// First point (i : j : 1) accepted by ok, walking i, j through 0, 1, -1, 2, ...
// along anti-diagonals.
inline ProjPoint choose_general_point(const Field& F, const PointFilter& ok, std::uint64_t limit = 10000) {
  std::uint64_t tried = 0;
  for (std::uint64_t s = 0;; ++s)
    for (std::uint64_t i = 0; i <= s; ++i) {
      if (tried++ >= limit) fail(ErrorKind::SearchExhausted, "no admissible point among the first " + std::to_string(limit));
      ProjPoint p(F.enumerate(i), F.enumerate(s - i), F.one());
      if (ok(p)) return p;
    }
}

// Same walk restricted to a line, by its parameter.
inline ProjPoint choose_point_on_line(const ProjLine& l, const PointFilter& ok, std::uint64_t limit = 10000) {
  const Field& F = l[0].field();
  Mat row(F, 1, 3);
  for (int j = 0; j < 3; ++j) row(0, j) = l[j];
  auto ker = row.kernel();
  for (std::uint64_t k = 0; k < limit; ++k) {
    ParamPoint u = k == 0 ? ParamPoint::infinity(F) : ParamPoint::affine(F.enumerate(k - 1));
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = u.s * ker[0][i] + u.t * ker[1][i];
    ProjPoint p(v);
    if (ok(p)) return p;
  }
  fail(ErrorKind::SearchExhausted, "no admissible point on " + l.str());
}

// Rational points of a parameterized curve, in parameter order.
inline ProjPoint curve_point(const RationalCurve& X, std::uint64_t k) {
  const Field& F = X.field();
  return param_point(X, k == 0 ? ParamPoint::infinity(F) : ParamPoint::affine(F.enumerate(k - 1)));
}

// No point of pts repeats, and p is not on a line through two of them.
inline bool general_with(const ProjPoint& p, const std::vector<ProjPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (p == pts[i]) return false;
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] != pts[j] && collinear(p, pts[i], pts[j])) return false;
  }
  return true;
}

// l meets X in distinct rational points only.
inline bool meets_rationally(const ProjLine& l, const RationalCurve& X) {
  const Field& F = X.field();
  Mat row(F, 1, 3);
  for (int j = 0; j < 3; ++j) row(0, j) = l[j];
  auto ker = row.kernel();
  Param line;
  for (int i = 0; i < 3; ++i) line[i] = BinaryForm(F, {ker[0][i], ker[1][i]});
  BinaryForm g = detail::pull(X.form, line);
  if (g.is_zero()) return false;
  auto rs = g.roots();
  int n = 0;
  for (auto& [u, m] : rs) {
    if (m > 1) return false;
    ++n;
  }
  return n == g.degree();
}

// An elementary quadratic map carrying the curve source birationally onto
// target. For the conic-to-cubic case the base point on the conic comes first.
struct PhiElement {
  BirMap map;
  std::array<ProjPoint, 3> base_points;
  RationalCurve source, target;
};

inline std::array<ProjPoint, 3> order_on_curve_first(const std::array<ProjPoint, 3>& bp, const RationalCurve& Y) {
  BaseSplit s = split_base_points(bp, Y);
  std::vector<ProjPoint> v = s.on;
  v.insert(v.end(), s.off.begin(), s.off.end());
  return {v[0], v[1], v[2]};
}

// Checks that m is elementary quadratic and restricts to a birational map Y -> Z.
inline PhiElement as_phi_element(const BirMap& m, const RationalCurve& Y, const RationalCurve& Z) {
  ElementaryQuadratic q = as_elementary_quadratic(m);
  restrict_map(m, Y, Z);
  return PhiElement{m, order_on_curve_first(q.base_points, Y), Y, Z};
}

// The element with base points p, q, r off the line z = 0 sending it onto xz = y^2,
// matching (s : t : 0) with (s^2 : st : t^2).
inline PhiElement phi_line_conic(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  const Field& F = p.field();
  RationalCurve L = standard_line(F), C = standard_conic(F);
  for (auto* b : {&p, &q, &r})
    if (on_curve(*b, L)) fail(ErrorKind::Precondition, b->str() + " lies on the line");
  ElementaryQuadratic e = quad_from_points(p, q, r);
  RationalCurve D = image_curve(e.map, L);
  BirMap m = compose(conic_transport(D, C), e.map);
  return PhiElement{m, {p, q, r}, L, C};
}

// The element with base points p on xz = y^2 and q, r off it, carrying the
// conic onto the canonical cubic of class cls. The line qr is tangent to the
// conic exactly for the cuspidal class.
inline PhiElement phi_conic_cubic(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r, CurveClass cls) {
  const Field& F = p.field();
  if (cls != CurveClass::NodalCubic && cls != CurveClass::CuspidalCubic)
    fail(ErrorKind::Precondition, "target must be a nodal or cuspidal cubic");
  RationalCurve C = standard_conic(F), X = canonical_model(cls, F);
  if (!on_curve(p, C)) fail(ErrorKind::Precondition, p.str() + " is not on the conic");
  for (auto* b : {&q, &r})
    if (on_curve(*b, C)) fail(ErrorKind::Precondition, b->str() + " lies on the conic");
  if (q == r || collinear(p, q, r)) fail(ErrorKind::CollinearPoints, "base points are collinear");
  bool tangent = is_tangent(line_through(q, r), C);
  if (tangent != (cls == CurveClass::CuspidalCubic))
    fail(ErrorKind::WrongTangency, std::string("line qr is ") + (tangent ? "" : "not ") + "tangent to the conic");
  ElementaryQuadratic e = quad_from_points(p, q, r);
  RationalCurve D = image_curve(e.map, C);
  BirMap m = compose(cubic_transport(D, X), e.map);
  return PhiElement{m, {p, q, r}, C, X};
}

// A linear map sending the line l onto z = 0.
inline ProjTransform line_to_standard(const ProjLine& l) {
  const Field& F = l[0].field();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Mat m(F, 3, 3);
      m(0, i) = F.one();
      m(1, j) = F.one();
      for (int k = 0; k < 3; ++k) m(2, k) = l[k];
      if (!m.det().is_zero()) return ProjTransform(m);
    }
  fail(ErrorKind::Precondition, "degenerate line");
}

// The elementary quadratic map in Dec(L) with base points p, q off L and r on L.
inline ElementaryQuadratic dec_line_quadratic(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  RationalCurve L = standard_line(p.field());
  if (on_curve(p, L) || on_curve(q, L) || !on_curve(r, L))
    fail(ErrorKind::WrongBasePointPattern, "need two base points off L and one on L");
  ElementaryQuadratic e = quad_from_points(p, q, r);
  RationalCurve img = image_curve(e.map, L);
  ProjTransform a = line_to_standard(ProjLine::from_form(img.form));
  return ElementaryQuadratic{compose(BirMap::from_transform(a), e.map), e.base_points};
}

inline PhiElement default_phi_line_conic(const Field& F) {
  return phi_line_conic(ProjPoint::of(F, 0, 0, 1), ProjPoint::of(F, 1, 0, 1), ProjPoint::of(F, 0, 1, 1));
}

}  // namespace cremona
