#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "cremona/algebra.hpp"
#include "cremona/birmap.hpp"
#include "cremona/mobius.hpp"
#include "cremona/projgeom.hpp"

namespace cremona {

enum class CurveClass { Line, Conic, NodalCubic, CuspidalCubic, HigherCuspidal, Other };

inline const char* class_name(CurveClass c) {
  switch (c) {
    case CurveClass::Line: return "line";
    case CurveClass::Conic: return "conic";
    case CurveClass::NodalCubic: return "nodal";
    case CurveClass::CuspidalCubic: return "cuspidal";
    case CurveClass::HigherCuspidal: return "xd";
    case CurveClass::Other: return "other";
  }
  return "?";
}

using Param = std::array<BinaryForm, 3>;

// An irreducible rational plane curve: its defining form (canonically scaled)
// and a birational parameterization P^1 -> curve.
struct RationalCurve {
  Poly form;
  Param param;
  CurveClass cls = CurveClass::Other;
  int xd = 0;              // d for x^d - y^{d-1} z
  bool canonical = false;  // the fixed model of its class

  const Field& field() const { return form.field(); }
  int degree() const { return form.total_degree(); }
  std::string literal() const;
};

namespace detail {

// f(p0(s,t), p1(s,t), p2(s,t)).
inline BinaryForm pull(const Poly& f, const Param& p) {
  return eval_in<BinaryForm>(f, p, BinaryForm::constant(f.field().one()));
}

inline Param reduce_param(Param p) {
  BinaryForm g = gcd_binary(gcd_binary(p[0], p[1]), p[2]);
  if (g.degree() > 0)
    for (auto& c : p) c = BinaryForm::exact_div(c, g);
  return p;
}

// Both triples define the same map P^1 -> P^2.
inline bool param_proportional(const Param& a, const Param& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

inline std::string param_str(const Param& p) {
  return "[" + p[0].str() + " : " + p[1].str() + " : " + p[2].str() + "]";
}

inline Param image_param(const BirMap& phi, const Param& p) {
  Param q{pull(phi[0], p), pull(phi[1], p), pull(phi[2], p)};
  bool all_zero = q[0].is_zero() && q[1].is_zero() && q[2].is_zero();
  if (all_zero) fail(ErrorKind::CurveContracted, "curve lies in the base locus");
  q = reduce_param(q);
  if (q[0].degree() == 0) fail(ErrorKind::CurveContracted, "curve is contracted to a point");
  return q;
}

inline std::array<std::array<Poly, 3>, 3> hessian_matrix(const Poly& f) {
  std::array<std::array<Poly, 3>, 3> h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h[i][j] = f.derivative(i).derivative(j);
  return h;
}

inline Poly det3_poly(const std::array<std::array<Poly, 3>, 3>& d) {
  return d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0]) +
         d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
}

inline BinaryForm binary_derivative(const BinaryForm& f, int v) {
  return BinaryForm::from_poly(f.to_poly().derivative(v), std::max(0, f.degree() - 1));
}

// A transform with third column p, so that (0:0:1) maps to p.
inline ProjTransform centre_at(const ProjPoint& p) {
  const Field& F = p.field();
  Vec3 e0{F.one(), F.zero(), F.zero()}, e1{F.zero(), F.one(), F.zero()}, e2{F.zero(), F.zero(), F.one()};
  Vec3 a = e0, b = e1;
  if (p[2].is_zero()) {
    if (!p[1].is_zero())
      b = e2;
    else
      a = e2;
  }
  return ProjTransform::from_columns(a, b, p.coords());
}

// Parameterize a form of degree d with a point p of multiplicity d - 1 by the
// pencil of lines through p.
inline Param project_from(const Poly& f, const ProjPoint& p) {
  const Field& F = f.field();
  int d = f.total_degree();
  ProjTransform t = centre_at(p);
  Poly g = substitute(f, t.forms());
  // g = z * a(x, y) + b(x, y) with deg a = d - 1, deg b = d.
  Poly a(F), b(F);
  g.for_each([&](const Exps& e, const Scalar& c) {
    if (e[2] == 1)
      a.add_term(detail::pack({e[0], e[1], 0}), c);
    else if (e[2] == 0)
      b.add_term(detail::pack(e), c);
    else
      fail(ErrorKind::Precondition, "point is not of multiplicity d - 1");
  });
  BinaryForm ab = BinaryForm::from_poly(a, d - 1), bb = BinaryForm::from_poly(b, d);
  Param local{BinaryForm::s_var(F) * ab, BinaryForm::t_var(F) * ab, -bb};
  Param out;
  const Mat& m = t.matrix();
  for (int i = 0; i < 3; ++i) {
    BinaryForm acc = BinaryForm::zero(F, d);
    for (int j = 0; j < 3; ++j) acc = acc + m(i, j) * local[j];
    out[i] = acc;
  }
  return reduce_param(out);
}

inline Poly canonical_form(CurveClass c, const Field& F, int d) {
  Poly x = Poly::x(F), y = Poly::y(F), z = Poly::z(F);
  switch (c) {
    case CurveClass::Line: return z;
    case CurveClass::Conic: return x * z - y * y;
    case CurveClass::NodalCubic: return x.pow(3) + y.pow(3) - x * y * z;
    case CurveClass::CuspidalCubic: return x.pow(3) - y * y * z;
    case CurveClass::HigherCuspidal: return x.pow(d) - y.pow(d - 1) * z;
    default: fail(ErrorKind::Precondition, "no canonical model for class other");
  }
}

}  // namespace detail

inline RationalCurve canonical_model(CurveClass c, const Field& F, int d = 0) {
  BinaryForm s = BinaryForm::s_var(F), t = BinaryForm::t_var(F);
  RationalCurve X;
  X.cls = c;
  X.canonical = true;
  switch (c) {
    case CurveClass::Line: X.param = {s, t, BinaryForm::zero(F, 1)}; break;
    case CurveClass::Conic: X.param = {s * s, s * t, t * t}; break;
    case CurveClass::NodalCubic: X.param = {s * s * t, s * t * t, s.pow(3) + t.pow(3)}; break;
    case CurveClass::CuspidalCubic: X.param = {s * t * t, t.pow(3), s.pow(3)}; break;
    case CurveClass::HigherCuspidal:
      if (d < 3) fail(ErrorKind::Precondition, "x^d - y^(d-1) z needs d >= 3");
      X.xd = d;
      if (d == 3) X.cls = CurveClass::CuspidalCubic;
      X.param = {s * t.pow(d - 1), t.pow(d), s.pow(d)};
      break;
    default: fail(ErrorKind::Precondition, "no canonical model for class other");
  }
  X.form = detail::canonical_form(c, F, d);
  return X;
}

inline RationalCurve xd_curve(int d, const Field& F) { return canonical_model(CurveClass::HigherCuspidal, F, d); }

inline bool on_curve(const ProjPoint& p, const RationalCurve& X) { return X.form.eval(p.coords()).is_zero(); }

inline ProjPoint param_point(const RationalCurve& X, const ParamPoint& u) {
  return ProjPoint(X.param[0].eval(u), X.param[1].eval(u), X.param[2].eval(u));
}

struct Preimages {
  std::vector<ParamPoint> points;  // rational preimages, sorted
  int count = 0;                   // number over the algebraic closure, with multiplicity
};

// Parameter values mapping to p: the roots of gcd of the 2x2 minors.
inline Preimages param_preimages(const RationalCurve& X, const ProjPoint& p) {
  if (!on_curve(p, X)) fail(ErrorKind::NotOnCurve, p.str() + " is not on the curve");
  BinaryForm g(X.field());
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) g = gcd_binary(g, p[i] * X.param[j] - p[j] * X.param[i]);
  Preimages out;
  out.count = g.degree();
  if (g.degree() > 0)
    for (auto& [r, m] : g.roots()) out.points.push_back(r);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

inline ParamPoint param_recover(const RationalCurve& X, const ProjPoint& p) {
  Preimages pre = param_preimages(X, p);
  if (pre.count != 1) fail(ErrorKind::SingularPoint, p.str() + " has " + std::to_string(pre.count) + " preimages");
  return pre.points.at(0);
}

inline ProjLine tangent_at(const RationalCurve& X, const ProjPoint& p) {
  if (!on_curve(p, X)) fail(ErrorKind::NotOnCurve, p.str() + " is not on the curve");
  Vec3 g{X.form.derivative(0).eval(p.coords()), X.form.derivative(1).eval(p.coords()),
         X.form.derivative(2).eval(p.coords())};
  if (detail::is_zero3(g)) fail(ErrorKind::SingularPoint, p.str() + " is singular");
  return ProjLine(g);
}

// True when l meets X with multiplicity at least 2 somewhere (over the closure).
inline bool is_tangent(const ProjLine& l, const RationalCurve& X) {
  const Field& F = X.field();
  Mat row(F, 1, 3);
  for (int j = 0; j < 3; ++j) row(0, j) = l[j];
  auto ker = row.kernel();
  Param line;
  for (int i = 0; i < 3; ++i) line[i] = BinaryForm(F, {ker[0][i], ker[1][i]});
  BinaryForm g = detail::pull(X.form, line);
  if (g.is_zero()) return true;
  BinaryForm h = gcd_binary(detail::binary_derivative(g, 0), detail::binary_derivative(g, 1));
  return h.degree() > 0;
}

// The two tangent lines of a conic through an outside point, sorted.
inline std::vector<ProjLine> tangents_through(const RationalCurve& C, const ProjPoint& r) {
  if (C.cls != CurveClass::Conic) fail(ErrorKind::Precondition, "tangents_through expects a conic");
  if (on_curve(r, C)) fail(ErrorKind::PointOnCurve, r.str() + " lies on the conic");
  Poly polar = Poly::constant(r[0]) * C.form.derivative(0) + Poly::constant(r[1]) * C.form.derivative(1) +
               Poly::constant(r[2]) * C.form.derivative(2);
  BinaryForm h = detail::pull(polar, C.param);
  auto rs = h.roots();
  int split = 0;
  for (auto& [u, m] : rs) split += m;
  if (split < h.degree()) fail(ErrorKind::FieldExtensionRequired, "tangents through " + r.str() + " are not rational");
  std::vector<ProjLine> out;
  for (auto& [u, m] : rs) out.push_back(tangent_at(C, param_point(C, u)));
  std::sort(out.begin(), out.end());
  return out;
}

struct CurveMarkers {
  std::optional<ProjPoint> singular;
  std::vector<ProjLine> branch_tangents;  // two for a node, one for a cusp, when rational
  bool branches_rational = true;
  Preimages singular_preimages;
  std::vector<ParamPoint> flex_preimages;  // rational flexes away from the singular point
  std::vector<ProjPoint> flexes;
};

inline CurveMarkers curve_markers(const RationalCurve& X) {
  CurveMarkers mk;
  if (X.cls != CurveClass::NodalCubic && X.cls != CurveClass::CuspidalCubic) return mk;
  const Field& F = X.field();
  Triple grad{X.form.derivative(0), X.form.derivative(1), X.form.derivative(2)};
  auto sing = common_zeros(grad);
  if (sing.points.size() != 1) fail(ErrorKind::NotRationalCubic, "cubic without a unique rational singular point");
  ProjPoint p = sing.points[0];
  mk.singular = p;
  auto h = detail::hessian_matrix(X.form);
  Poly cone(F);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cone += Poly::constant(h[i][j].eval(p.coords())) * Poly::var(F, i) * Poly::var(F, j);
  auto fl = factor_linear(cone);
  for (auto& [l, m] : fl.factors) mk.branch_tangents.push_back(ProjLine::from_form(l));
  mk.branches_rational = fl.remainder.total_degree() == 0;
  mk.singular_preimages = param_preimages(X, p);
  BinaryForm hp = detail::pull(detail::det3_poly(h), X.param);
  for (auto& [u, m] : hp.roots()) {
    if (std::find(mk.singular_preimages.points.begin(), mk.singular_preimages.points.end(), u) !=
        mk.singular_preimages.points.end())
      continue;
    mk.flex_preimages.push_back(u);
    mk.flexes.push_back(param_point(X, u));
  }
  return mk;
}

// Determine the class of an irreducible curve given by its form. Without a
// parameterization one is built by projection from a point of multiplicity d-1.
inline RationalCurve classify(const Poly& form, std::optional<Param> param = std::nullopt) {
  if (form.is_zero() || !form.is_homogeneous()) fail(ErrorKind::NonHomogeneous, "curve needs a nonzero form");
  const Field& F = form.field();
  int d = form.total_degree();
  RationalCurve X;
  X.form = form.canonical();
  if (d == 1) {
    X.cls = CurveClass::Line;
    if (!param) {
      ProjLine l = ProjLine::from_form(form);
      Mat row(F, 1, 3);
      for (int j = 0; j < 3; ++j) row(0, j) = l[j];
      auto ker = row.kernel();
      Param p;
      for (int i = 0; i < 3; ++i) p[i] = BinaryForm(F, {ker[0][i], ker[1][i]});
      param = p;
    }
  } else if (d == 2) {
    Mat m(F, 3, 3);
    Scalar half = F.of(2).inv();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Exps e{0, 0, 0};
        e[i] += 1;
        e[j] += 1;
        m(i, j) = i == j ? form.coeff(e) : half * form.coeff(e);
      }
    if (m.det().is_zero()) fail(ErrorKind::DegenerateConic, "degenerate conic " + form.str());
    X.cls = CurveClass::Conic;
    if (!param) {
      // Find a rational point: roots of f(x, y0, 1) for small y0, then z = 0.
      std::optional<ProjPoint> pt;
      for (std::uint64_t k = 0; k < 400 && !pt; ++k) {
        Scalar y0 = F.enumerate(k);
        UPoly u(F);
        form.for_each([&](const Exps& e, const Scalar& c) { u = u + UPoly::monomial(c * y0.pow(e[1]), e[0]); });
        if (u.is_zero()) {
          pt = ProjPoint(F.zero(), y0, F.one());
          break;
        }
        if (u.degree() > 0) {
          auto rs = roots(u);
          if (!rs.empty()) pt = ProjPoint(rs[0], y0, F.one());
        }
      }
      if (!pt) fail(ErrorKind::IrrationalData, "no rational point found on conic " + form.str());
      param = detail::project_from(form, *pt);
    }
  } else if (d == 3) {
    Triple grad{form.derivative(0), form.derivative(1), form.derivative(2)};
    for (auto& g : grad)
      if (g.is_zero()) fail(ErrorKind::NotRationalCubic, "cone over points");
    BasePoints sing;
    try {
      sing = common_zeros(grad);
    } catch (const Error&) {
      fail(ErrorKind::NotRationalCubic, "cubic with a singular curve component");
    }
    if (sing.points.size() != 1)
      fail(ErrorKind::NotRationalCubic, std::to_string(sing.points.size()) + " rational singular points on " + form.str());
    ProjPoint p = sing.points[0];
    auto h = detail::hessian_matrix(form);
    Mat hm(F, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) hm(i, j) = h[i][j].eval(p.coords());
    int r = hm.rank();
    if (r == 2)
      X.cls = CurveClass::NodalCubic;
    else if (r == 1)
      X.cls = CurveClass::CuspidalCubic;
    else
      fail(ErrorKind::NotRationalCubic, "triple point");
    if (!param) param = detail::project_from(form, p);
  } else {
    Poly model = detail::canonical_form(CurveClass::HigherCuspidal, F, d);
    if (X.form == model.canonical()) {
      RationalCurve c = canonical_model(CurveClass::HigherCuspidal, F, d);
      if (!param) return c;
      X.cls = CurveClass::HigherCuspidal;
      X.xd = d;
    } else {
      X.cls = CurveClass::Other;
      if (!param) fail(ErrorKind::Unsupported, "curves of degree " + std::to_string(d) + " need a parameterization");
    }
  }
  Param p = detail::reduce_param(*param);
  if (!detail::pull(form, p).is_zero()) fail(ErrorKind::NotOnCurve, "parameterization does not lie on the curve");
  if (p[0].degree() != d) fail(ErrorKind::NotBirational, "parameterization is not birational onto the curve");
  X.param = p;
  if (X.cls != CurveClass::Other) {
    RationalCurve m = canonical_model(X.cls, F, d);
    X.canonical = X.form == m.form && detail::param_proportional(X.param, m.param);
  }
  return X;
}

// Smallest-degree form vanishing on the image of a parameterization.
inline Poly implicitize(const Param& p) {
  const Field& F = p[0].field();
  int m = p[0].degree();
  for (int k = 1; k <= m; ++k) {
    std::vector<Exps> mons;
    for (int a = k; a >= 0; --a)
      for (int b = k - a; b >= 0; --b) mons.push_back({a, b, k - a - b});
    Mat A(F, k * m + 1, static_cast<int>(mons.size()));
    for (std::size_t j = 0; j < mons.size(); ++j) {
      BinaryForm v = p[0].pow(mons[j][0]) * p[1].pow(mons[j][1]) * p[2].pow(mons[j][2]);
      for (int i = 0; i <= k * m; ++i) A(i, static_cast<int>(j)) = v.coeff(i);
    }
    auto ker = A.kernel();
    if (ker.empty()) continue;
    Poly f(F);
    for (std::size_t j = 0; j < mons.size(); ++j)
      if (!ker[0][j].is_zero()) f.add_term(detail::pack(mons[j]), ker[0][j]);
    return f.canonical();
  }
  fail(ErrorKind::Precondition, "parameterization with no implicit equation");
}

inline RationalCurve image_curve(const BirMap& phi, const RationalCurve& X) {
  if (phi.field() != X.field()) fail(ErrorKind::FieldMismatch, "map and curve over different fields");
  Param q = detail::image_param(phi, X.param);
  Poly f = implicitize(q);
  if (f.total_degree() == q[0].degree()) return classify(f, q);
  return classify(f);
}

// The Mobius map m with phi(X(u)) = Y(m(u)).
inline MobiusMap restrict_map(const BirMap& phi, const RationalCurve& X, const RationalCurve& Y) {
  if (phi.field() != X.field() || X.field() != Y.field()) fail(ErrorKind::FieldMismatch, "restrict across fields");
  const Field& F = X.field();
  Param q = detail::image_param(phi, X.param);
  if (!detail::pull(Y.form, q).is_zero()) fail(ErrorKind::NotOnto, "image of the curve is not the target curve");
  if (q[0].degree() != Y.param[0].degree()) fail(ErrorKind::NotBirational, "restriction has degree > 1");
  std::vector<ParamPoint> us, vs;
  for (std::uint64_t k = 0; k < 200 && us.size() < 3; ++k) {
    ParamPoint u = k == 0 ? ParamPoint::infinity(F) : ParamPoint::affine(F.enumerate(k - 1));
    Vec3 c{q[0].eval(u), q[1].eval(u), q[2].eval(u)};
    if (detail::is_zero3(c)) continue;
    Preimages pre = param_preimages(Y, ProjPoint(c));
    if (pre.count != 1) continue;
    ParamPoint v = pre.points[0];
    if (std::find(vs.begin(), vs.end(), v) != vs.end()) continue;
    us.push_back(u);
    vs.push_back(v);
  }
  if (us.size() < 3) fail(ErrorKind::NotBirational, "not enough sample points to fit a Mobius map");
  MobiusMap m = MobiusMap::from_three_points({us[0], us[1], us[2]}, {vs[0], vs[1], vs[2]});
  Param yq{m.pullback(Y.param[0]), m.pullback(Y.param[1]), m.pullback(Y.param[2])};
  if (!detail::param_proportional(yq, q)) fail(ErrorKind::NotBirational, "restriction is not a Mobius map");
  return m;
}

inline bool in_dec(const BirMap& phi, const RationalCurve& X) {
  try {
    restrict_map(phi, X, X);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CurveContracted || e.kind() == ErrorKind::NotOnto || e.kind() == ErrorKind::NotBirational)
      return false;
    throw;
  }
}

inline bool in_ine(const BirMap& phi, const RationalCurve& X) {
  try {
    return detail::param_proportional(detail::image_param(phi, X.param), X.param);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CurveContracted) return false;
    throw;
  }
}

namespace detail {

// Coefficient matrix of a parameterization: rows are components.
inline Mat param_matrix(const Param& p) {
  int n = p[0].degree() + 1;
  Mat m(p[0].field(), 3, n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = p[i].degree() + 1 == n ? p[i].coeff(j) : p[i].field().zero();
  return m;
}

// beta with beta . a = b, if it exists and is invertible.
inline std::optional<ProjTransform> solve_transport(const Param& a, const Param& b) {
  Mat A = param_matrix(a), B = param_matrix(b);
  Mat At = A.transpose();
  Mat beta(A.field(), 3, 3);
  for (int i = 0; i < 3; ++i) {
    std::vector<Scalar> rhs;
    for (int j = 0; j < B.cols(); ++j) rhs.push_back(B(i, j));
    auto sol = At.solve(rhs);
    if (!sol) return std::nullopt;
    for (int j = 0; j < 3; ++j) beta(i, j) = (*sol)[j];
  }
  if (beta.det().is_zero()) return std::nullopt;
  return ProjTransform(beta);
}

}  // namespace detail

// The linear map beta with beta(C1) = C2 and beta o param1 = param2.
inline ProjTransform conic_transport(const RationalCurve& c1, const RationalCurve& c2) {
  if (c1.cls != CurveClass::Conic || c2.cls != CurveClass::Conic) fail(ErrorKind::Precondition, "conic_transport expects conics");
  auto b = detail::solve_transport(c1.param, c2.param);
  if (!b) fail(ErrorKind::DegenerateConic, "conic parameterization spans a line");
  return *b;
}

// A linear map carrying one singular cubic onto another of the same class,
// matching singular point preimages and a rational flex.
inline ProjTransform cubic_transport(const RationalCurve& x1, const RationalCurve& x2) {
  if (x1.cls != x2.cls || (x1.cls != CurveClass::NodalCubic && x1.cls != CurveClass::CuspidalCubic))
    fail(ErrorKind::NoTransport, std::string("no transport from ") + class_name(x1.cls) + " to " + class_name(x2.cls));
  const Field& F = x1.field();
  CurveMarkers m1 = curve_markers(x1), m2 = curve_markers(x2);
  for (auto* m : {&m1, &m2}) {
    if (static_cast<int>(m->singular_preimages.points.size()) != (x1.cls == CurveClass::NodalCubic ? 2 : 1))
      fail(ErrorKind::IrrationalMarkers, "preimages of the singular point are not rational");
    if (m->flex_preimages.empty()) fail(ErrorKind::IrrationalMarkers, "no rational flex");
  }
  ParamPoint f1 = m1.flex_preimages[0], f2 = m2.flex_preimages[0];
  std::vector<MobiusMap> candidates;
  auto& s1 = m1.singular_preimages.points;
  auto& s2 = m2.singular_preimages.points;
  if (x1.cls == CurveClass::NodalCubic) {
    candidates.push_back(MobiusMap::from_three_points({s1[0], s1[1], f1}, {s2[0], s2[1], f2}));
    candidates.push_back(MobiusMap::from_three_points({s1[0], s1[1], f1}, {s2[1], s2[0], f2}));
  } else {
    // Any third point: the maps fixing cusp and flex preimages act by scaling.
    auto other = [&](const ParamPoint& a, const ParamPoint& b) {
      for (std::uint64_t k = 0;; ++k) {
        ParamPoint u = ParamPoint::affine(F.enumerate(k));
        if (u != a && u != b) return u;
      }
    };
    candidates.push_back(MobiusMap::from_three_points({s1[0], f1, other(s1[0], f1)}, {s2[0], f2, other(s2[0], f2)}));
  }
  for (auto& m : candidates) {
    Param target{m.pullback(x2.param[0]), m.pullback(x2.param[1]), m.pullback(x2.param[2])};
    if (auto b = detail::solve_transport(x1.param, target)) return *b;
  }
  fail(ErrorKind::NoTransport, "marker-matching Mobius maps do not extend linearly");
}

inline std::string RationalCurve::literal() const {
  if (canonical) {
    if (cls == CurveClass::HigherCuspidal) return "curve xd" + std::to_string(xd) + " canonical";
    return std::string("curve ") + class_name(cls) + " canonical";
  }
  return "curve form \"" + form.str() + "\" param \"" + detail::param_str(param) + "\"";
}

// "curve <class> canonical" or: curve form "<poly>" param "[b0 : b1 : b2]".
inline RationalCurve parse_curve(const std::string& text, const Field& F) {
  std::vector<std::string> tok;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text[i] == '"') {
      std::size_t j = text.find('"', i + 1);
      if (j == std::string::npos) fail(ErrorKind::SyntaxError, "unterminated quote in curve literal");
      tok.push_back(text.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      tok.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  if (!tok.empty() && tok[0] == "curve") tok.erase(tok.begin());
  if (tok.size() == 2 && tok[1] == "canonical") {
    const std::string& c = tok[0];
    if (c == "line") return canonical_model(CurveClass::Line, F);
    if (c == "conic") return canonical_model(CurveClass::Conic, F);
    if (c == "nodal") return canonical_model(CurveClass::NodalCubic, F);
    if (c == "cuspidal") return canonical_model(CurveClass::CuspidalCubic, F);
    if (c.rfind("xd", 0) == 0 && c.size() > 2) {
      int d = 0;
      try {
        d = std::stoi(c.substr(2));
      } catch (const std::exception&) {
        fail(ErrorKind::SyntaxError, "bad exponent in " + c);
      }
      return xd_curve(d, F);
    }
    fail(ErrorKind::SyntaxError, "unknown curve class " + c);
  }
  if (tok.size() >= 2 && tok[0] == "form") {
    Poly f = parse_form(tok[1], F);
    if (tok.size() == 2) return classify(f);
    if (tok.size() == 4 && tok[2] == "param") {
      auto parts = split_literal(tok[3], '[', ']');
      if (parts.size() != 3) fail(ErrorKind::SyntaxError, "parameterization needs three components");
      Param p;
      int d = -1;
      for (int i = 0; i < 3; ++i) {
        Poly b = parse_poly(parts[i], F, Vars::ST);
        if (!b.is_zero()) d = b.total_degree();
      }
      if (d < 1) fail(ErrorKind::SyntaxError, "constant parameterization");
      for (int i = 0; i < 3; ++i) p[i] = BinaryForm::from_poly(parse_poly(parts[i], F, Vars::ST), d);
      return classify(f, p);
    }
  }
  fail(ErrorKind::SyntaxError, "bad curve literal: " + text);
}

}  // namespace cremona
