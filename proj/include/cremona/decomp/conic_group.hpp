#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "cremona/birmap.hpp"
#include "cremona/curves.hpp"

namespace cremona {

inline RationalCurve standard_conic(const Field& F) { return canonical_model(CurveClass::Conic, F); }
inline RationalCurve standard_line(const Field& F) { return canonical_model(CurveClass::Line, F); }

// The linear map of P^2 preserving xz = y^2 that acts on (s^2 : st : t^2) as m.
inline ProjTransform aut_conic_from_pgl2(const MobiusMap& m) {
  const Scalar &a = m.a(), &b = m.b(), &c = m.c(), &d = m.d();
  Mat t(m.field(), 3, 3);
  Scalar two = m.field().of(2);
  t(0, 0) = a * a;
  t(0, 1) = two * a * b;
  t(0, 2) = b * b;
  t(1, 0) = a * c;
  t(1, 1) = a * d + b * c;
  t(1, 2) = b * d;
  t(2, 0) = c * c;
  t(2, 1) = two * c * d;
  t(2, 2) = d * d;
  return ProjTransform(t);
}

inline bool preserves(const ProjTransform& t, const RationalCurve& X) {
  return proportional(substitute(X.form, t.forms()), X.form);
}

inline MobiusMap pgl2_from_aut_conic(const ProjTransform& t) {
  RationalCurve C = standard_conic(t.field());
  if (!preserves(t, C)) fail(ErrorKind::NotInAutConic, t.str() + " does not preserve the conic");
  return restrict_map(BirMap::from_transform(t), C, C);
}

inline ProjTransform lambda_ab(const Scalar& a, const Scalar& b) {
  if ((a * b).is_one()) fail(ErrorKind::InvalidParameters, "lambda needs ab != 1");
  const Field& F = a.field();
  return aut_conic_from_pgl2(MobiusMap(F.one(), a, b, F.one()));
}

inline ProjTransform mu_c(const Scalar& c) {
  if (c.is_zero()) fail(ErrorKind::InvalidParameters, "mu needs c != 0");
  return ProjTransform::diag(c * c, c, c.field().one());
}

// The elementary quadratic map in Ine(C) with base points (1:0:0), (0:0:1), (a:1:b).
inline ElementaryQuadratic sigma_ab(const Scalar& a, const Scalar& b) {
  Scalar e = a * b;
  if (e.is_one()) fail(ErrorKind::InvalidParameters, "sigma needs ab != 1");
  const Field& F = a.field();
  Poly x = Poly::x(F), y = Poly::y(F), z = Poly::z(F);
  Poly q = x * z - y * y;
  Poly k = Poly::constant(F.one() - e);
  BirMap m({k * x * y + Poly::constant(a) * q, x * z - Poly::constant(e) * y * y, k * y * z + Poly::constant(b) * q});
  std::array<ProjPoint, 3> bp{ProjPoint(F.one(), F.zero(), F.zero()), ProjPoint(F.zero(), F.zero(), F.one()),
                              ProjPoint(a, F.one(), b)};
  std::sort(bp.begin(), bp.end());
  return ElementaryQuadratic{m, bp};
}

struct ConjugationResult {
  Scalar a2, b2;
  BirMap lhs;  // lambda^-1 mu^-1 sigma mu sigma^-1 lambda
};

inline std::pair<Scalar, Scalar> relation_params(const Scalar& a, const Scalar& b, const Scalar& c) {
  const Field& F = a.field();
  Scalar e = a * b;
  if (e.is_zero() || e.is_one()) fail(ErrorKind::InvalidParameters, "relation needs ab != 0, 1");
  if (c.is_zero() || c.is_one()) fail(ErrorKind::InvalidParameters, "relation needs c != 0, 1");
  Scalar cm1 = c - F.one();
  return {(F.one() - e * c) / (b * cm1), (e - c) / (a * cm1)};
}

inline ConjugationResult conjugation_relation(const Scalar& a, const Scalar& b, const Scalar& c) {
  auto [a2, b2] = relation_params(a, b, c);
  BirMap s = sigma_ab(a, b).map, si = invert(s);
  BirMap l = BirMap::from_transform(lambda_ab(a, b)), li = invert(l);
  BirMap m = BirMap::from_transform(mu_c(c)), mi = invert(m);
  BirMap lhs = compose_all({li, mi, s, m, si, l}, a.field());
  if (lhs != sigma_ab(a2, b2).map) fail(ErrorKind::VerificationFailed, "conjugation relation does not hold");
  return {a2, b2, lhs};
}

// The c making a' equal to target: 1 - abc = target * b * (c - 1).
inline Scalar solve_c_for_a(const Scalar& a, const Scalar& b, const Scalar& target) {
  const Field& F = a.field();
  Scalar den = a * b + target * b;
  if (den.is_zero()) fail(ErrorKind::ExcludedPoint, "no finite c reaches a' = " + target.str());
  Scalar c = (F.one() + target * b) / den;
  if (c.is_zero() || c.is_one()) fail(ErrorKind::ExcludedPoint, "target a' = " + target.str() + " needs c = " + c.str());
  return c;
}

// The base point of sigma_{a',b'} as c varies: a point of bx + (1+ab)y + az = 0.
inline ProjPoint relation_point(const Scalar& a, const Scalar& b, const Scalar& c) {
  const Field& F = a.field();
  Scalar e = a * b;
  return ProjPoint(a * (F.one() - e * c), e * (c - F.one()), b * (e - c));
}

enum class OrbitKind { Bd, B10, B01, B00 };

struct OrbitLabel {
  OrbitKind kind = OrbitKind::Bd;
  Scalar d;                              // for Bd
  ProjTransform normalizer;              // in Aut(P^2, C)
  std::array<ProjPoint, 3> base_points;  // P, Q on C and R off C, in the order used

  std::string str() const {
    switch (kind) {
      case OrbitKind::Bd: return "B_d d=" + d.str();
      case OrbitKind::B10: return "B_{1,0}";
      case OrbitKind::B01: return "B_{0,1}";
      case OrbitKind::B00: return "B_{0,0}";
    }
    return "?";
  }
  bool same_orbit(const OrbitLabel& o) const { return kind == o.kind && (kind != OrbitKind::Bd || d == o.d); }
  // Contracts a tangent line to C.
  bool tangent() const { return kind != OrbitKind::Bd; }
};

struct BaseSplit {
  std::vector<ProjPoint> on, off;
};

inline BaseSplit split_base_points(const std::array<ProjPoint, 3>& bp, const RationalCurve& X) {
  BaseSplit s;
  for (auto& p : bp) (on_curve(p, X) ? s.on : s.off).push_back(p);
  return s;
}

namespace detail {

inline OrbitLabel classify_ordered(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r, const RationalCurve& C) {
  const Field& F = C.field();
  ParamPoint up = param_recover(C, p), uq = param_recover(C, q);
  ParamPoint third;
  for (std::uint64_t k = 0;; ++k) {
    third = ParamPoint::affine(F.enumerate(k));
    if (third != up && third != uq) break;
  }
  MobiusMap m0 = MobiusMap::from_three_points({up, uq, third}, {ParamPoint::infinity(F), ParamPoint::make(F.zero(), F.one()),
                                                                ParamPoint::affine(F.one())});
  ProjTransform t0 = aut_conic_from_pgl2(m0);
  ProjPoint r0 = t0.apply(r);
  const Scalar &x = r0[0], &y = r0[1], &z = r0[2];
  if (y.is_zero()) fail(ErrorKind::WrongBasePointPattern, "base points are collinear");
  OrbitLabel out;
  out.base_points = {p, q, r};
  Scalar k = F.one();
  if (!x.is_zero() && !z.is_zero()) {
    out.kind = OrbitKind::Bd;
    out.d = x * z / (y * y);
    k = z / y;
  } else if (!x.is_zero()) {
    out.kind = OrbitKind::B10;
    k = y / x;
  } else if (!z.is_zero()) {
    out.kind = OrbitKind::B01;
    k = z / y;
  } else {
    out.kind = OrbitKind::B00;
  }
  out.normalizer = mu_c(k) * t0;
  return out;
}

}  // namespace detail

// PGL_2-orbit of the base points of an elementary quadratic map with two base
// points on C and one off C. Of the two orderings of the points on C, the one
// giving B_{1,0} is preferred over B_{0,1}; otherwise the sorted order is used.
inline OrbitLabel orbit_classify(const ElementaryQuadratic& tau) {
  const Field& F = tau.map.field();
  RationalCurve C = standard_conic(F);
  BaseSplit s = split_base_points(tau.base_points, C);
  if (s.on.size() != 2 || s.off.size() != 1)
    fail(ErrorKind::WrongBasePointPattern, "need two base points on C and one off C, got " + std::to_string(s.on.size()) +
                                                " on C");
  OrbitLabel a = detail::classify_ordered(s.on[0], s.on[1], s.off[0], C);
  if (a.kind != OrbitKind::B01) return a;
  return detail::classify_ordered(s.on[1], s.on[0], s.off[0], C);
}

}  // namespace cremona
