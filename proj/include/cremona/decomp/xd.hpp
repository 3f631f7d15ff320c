#pragma once

#include <optional>
#include <string>

#include "cremona/birmap.hpp"
#include "cremona/curves.hpp"

namespace cremona {

// (x y^{d-1} : y^d : (1-a) x^d + a y^{d-1} z), fixing x^d = y^{d-1} z pointwise.
inline BirMap xd_tau(int d, const Scalar& a) {
  const Field& F = a.field();
  if (d < 4) fail(ErrorKind::InvalidParameters, "need d >= 4");
  if (a.is_zero()) fail(ErrorKind::InvalidParameters, "need a != 0");
  Poly x = Poly::x(F), y = Poly::y(F), z = Poly::z(F);
  Poly yd1 = y.pow(d - 1);
  return BirMap({x * yd1, y.pow(d), Poly::constant(F.one() - a) * x.pow(d) + Poly::constant(a) * yd1 * z});
}

// (a x : y : a^d z)
inline ProjTransform xd_aut(int d, const Scalar& a) {
  const Field& F = a.field();
  if (d < 4) fail(ErrorKind::InvalidParameters, "need d >= 4");
  if (a.is_zero()) fail(ErrorKind::InvalidParameters, "need a != 0");
  Scalar ad = F.one();
  for (int i = 0; i < d; ++i) ad = ad * a;
  return ProjTransform::diag(a, F.one(), ad);
}

// Linear maps preserving x^d = y^{d-1} z are exactly the diagonal (a x : y : a^d z).
inline std::optional<Scalar> xd_aut_parameter(int d, const ProjTransform& t) {
  const Mat& m = t.matrix();
  const Field& F = m(0, 0).field();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !m(i, j).is_zero()) return std::nullopt;
  if (m(1, 1).is_zero()) return std::nullopt;
  Scalar a = m(0, 0) / m(1, 1), c = m(2, 2) / m(1, 1);
  if (a.is_zero()) return std::nullopt;
  Scalar ad = F.one();
  for (int i = 0; i < d; ++i) ad = ad * a;
  if (ad != c) return std::nullopt;
  return a;
}

enum class XdVerdict { IsStandardUpToAut, NotInDec, NotStandard };

struct XdCheck {
  XdVerdict verdict;
  std::optional<ProjTransform> witness;  // lambda with tau = lambda o sigma
  std::string detail;
};

inline const char* verdict_name(XdVerdict v) {
  switch (v) {
    case XdVerdict::IsStandardUpToAut: return "IsStandardUpToAut";
    case XdVerdict::NotInDec: return "NotInDec";
    case XdVerdict::NotStandard: return "NotStandard";
  }
  return "?";
}

// An elementary quadratic map preserving x^d = y^{d-1} z is (yz : zx : xy)
// followed by an automorphism of the curve. NotStandard would contradict that.
inline XdCheck xd_quadratic_checker(const BirMap& tau, int d) {
  const Field& F = tau.field();
  if (d < 4) fail(ErrorKind::InvalidParameters, "need d >= 4");
  auto qc = check_elementary_quadratic(tau);
  if (!qc.quad) return {XdVerdict::NotInDec, std::nullopt, "not elementary quadratic: " + qc.detail};
  RationalCurve X = xd_curve(d, F);
  if (!in_dec(tau, X)) return {XdVerdict::NotInDec, std::nullopt, "does not preserve the curve"};
  std::array<ProjPoint, 3> tri{ProjPoint::of(F, 0, 0, 1), ProjPoint::of(F, 0, 1, 0), ProjPoint::of(F, 1, 0, 0)};
  std::sort(tri.begin(), tri.end());
  if (qc.quad->base_points != tri) return {XdVerdict::NotStandard, std::nullopt, "base points are not the coordinate triangle"};
  auto lambda = compose(tau, standard_involution(F)).as_linear();
  if (!lambda) return {XdVerdict::NotStandard, std::nullopt, "tau o sigma is not linear"};
  if (!xd_aut_parameter(d, *lambda)) return {XdVerdict::NotStandard, std::nullopt, "tau o sigma does not preserve the curve"};
  return {XdVerdict::IsStandardUpToAut, *lambda, ""};
}

}  // namespace cremona
