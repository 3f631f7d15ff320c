#include <gtest/gtest.h>

#include <random>

#include "cremona/curves.hpp"

using namespace cremona;

namespace {

const Field Q = Field::rationals();

ProjPoint pt(long long a, long long b, long long c, Field F = Q) { return ProjPoint::of(F, a, b, c); }
ProjLine ln(long long a, long long b, long long c, Field F = Q) { return ProjLine(F.of(a), F.of(b), F.of(c)); }
BirMap M(const std::string& s, Field F = Q) { return parse_map(s, F); }

template <class Fn>
ErrorKind kind_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Precondition;
}

// Image of ((a,b),(c,d)) acting on the conic parameterization (s^2 : st : t^2).
ProjTransform veronese(const Field& F, long long a, long long b, long long c, long long d) {
  return ProjTransform::from_rows(F, {{{a * a, 2 * a * b, b * b}, {a * c, a * d + b * c, b * d}, {c * c, 2 * c * d, d * d}}});
}

ProjTransform random_transform(std::mt19937_64& rng, Field F) {
  for (;;) {
    Mat m(F, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = F.of(static_cast<long long>(rng() % 11) - 5);
    if (!m.det().is_zero()) return ProjTransform(m);
  }
}

}  // namespace

TEST(Curves, CanonicalModelsVanish) {
  for (Field F : {Q, Field::prime(101)}) {
    for (auto c : {CurveClass::Line, CurveClass::Conic, CurveClass::NodalCubic, CurveClass::CuspidalCubic}) {
      RationalCurve X = canonical_model(c, F);
      EXPECT_TRUE(detail::pull(X.form, X.param).is_zero()) << class_name(c);
      EXPECT_EQ(classify(X.form, X.param).cls, c);
    }
    for (int d = 3; d <= 7; ++d) {
      RationalCurve X = xd_curve(d, F);
      EXPECT_TRUE(detail::pull(X.form, X.param).is_zero());
      EXPECT_EQ(X.form.total_degree(), d);
    }
  }
  EXPECT_EQ(canonical_model(CurveClass::Conic, Q).form.str(), "x*z - y^2");
  EXPECT_EQ(canonical_model(CurveClass::NodalCubic, Q).form, parse_form("x^3 + y^3 - x*y*z", Q).canonical());
  EXPECT_EQ(canonical_model(CurveClass::CuspidalCubic, Q).form, parse_form("x^3 - y^2*z", Q).canonical());
}

TEST(Curves, OnCurveAndRecover) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  RationalCurve X = canonical_model(CurveClass::CuspidalCubic, Q);
  EXPECT_TRUE(on_curve(pt(1, 1, 1), C));
  EXPECT_TRUE(on_curve(pt(1, 1, 1), X));
  EXPECT_FALSE(on_curve(pt(1, 2, 1), C));
  // (4:2:1) = (s^2 : st : t^2) at t/s = 1/2.
  ParamPoint u = param_recover(C, pt(4, 2, 1));
  EXPECT_EQ(u, ParamPoint::make(Q.one(), Q.frac(1, 2)));
  EXPECT_EQ(param_point(C, u), pt(4, 2, 1));
  EXPECT_EQ(kind_of([&] { param_recover(C, pt(1, 2, 1)); }), ErrorKind::NotOnCurve);
  EXPECT_EQ(kind_of([&] { param_recover(X, pt(0, 0, 1)); }), ErrorKind::SingularPoint);
  RationalCurve N = canonical_model(CurveClass::NodalCubic, Q);
  Preimages node = param_preimages(N, pt(0, 0, 1));
  EXPECT_EQ(node.count, 2);
  ASSERT_EQ(node.points.size(), 2u);
  EXPECT_EQ(node.points[0], ParamPoint::make(Q.zero(), Q.one()));
  EXPECT_EQ(node.points[1], ParamPoint::infinity(Q));
}

TEST(Curves, RecoverRoundTripProperty) {
  for (Field F : {Q, Field::prime(10007)}) {
    for (auto c : {CurveClass::Conic, CurveClass::NodalCubic, CurveClass::CuspidalCubic}) {
      RationalCurve X = canonical_model(c, F);
      CurveMarkers mk = curve_markers(X);
      for (int k = -6; k <= 6; ++k) {
        ParamPoint u = ParamPoint::affine(F.of(k));
        if (mk.singular && std::find(mk.singular_preimages.points.begin(), mk.singular_preimages.points.end(), u) !=
                               mk.singular_preimages.points.end())
          continue;
        EXPECT_EQ(param_recover(X, param_point(X, u)), u) << class_name(c) << " " << k;
      }
    }
  }
}

TEST(Curves, TangentExamples) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  // Gradient (z, -2y, x) at (t^2 : t : 1) with t = 3.
  EXPECT_EQ(tangent_at(C, pt(9, 3, 1)), ln(1, -6, 9));
  EXPECT_EQ(tangent_at(C, pt(1, 0, 0)), ln(0, 0, 1));
  EXPECT_FALSE(is_tangent(ln(0, 1, 0), C));
  EXPECT_TRUE(is_tangent(ln(0, 0, 1), C));
  EXPECT_TRUE(is_tangent(ln(1, -6, 9), C));
  RationalCurve X = canonical_model(CurveClass::CuspidalCubic, Q);
  EXPECT_EQ(kind_of([&] { tangent_at(X, pt(0, 0, 1)); }), ErrorKind::SingularPoint);
  // Every line through the cusp meets it doubly.
  EXPECT_TRUE(is_tangent(ln(1, 0, 0), X));
  // The inflection tangent z = 0 at (0:1:0).
  EXPECT_EQ(tangent_at(X, pt(0, 1, 0)), ln(0, 0, 1));
}

TEST(Curves, TangentsThrough) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  auto ts = tangents_through(C, pt(0, 1, 0));
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0], ln(0, 0, 1));
  EXPECT_EQ(ts[1], ln(1, 0, 0));
  EXPECT_EQ(kind_of([&] { tangents_through(C, pt(1, 0, 1)); }), ErrorKind::FieldExtensionRequired);
  EXPECT_EQ(kind_of([&] { tangents_through(C, pt(1, 1, 1)); }), ErrorKind::PointOnCurve);
  Field F5 = Field::prime(5);
  RationalCurve C5 = canonical_model(CurveClass::Conic, F5);
  auto t5 = tangents_through(C5, pt(1, 0, 1, F5));
  ASSERT_EQ(t5.size(), 2u);
  for (auto& l : t5) {
    EXPECT_TRUE(l.contains(pt(1, 0, 1, F5)));
    EXPECT_TRUE(is_tangent(l, C5));
  }
}

TEST(Curves, ClassifyExamples) {
  RationalCurve X = classify(parse_form("x^3 - y^2*z", Q));
  EXPECT_EQ(X.cls, CurveClass::CuspidalCubic);
  CurveMarkers mx = curve_markers(X);
  EXPECT_EQ(*mx.singular, pt(0, 0, 1));
  ASSERT_EQ(mx.branch_tangents.size(), 1u);
  EXPECT_EQ(mx.branch_tangents[0], ln(0, 1, 0));
  ASSERT_EQ(mx.flexes.size(), 1u);
  EXPECT_EQ(mx.flexes[0], pt(0, 1, 0));

  RationalCurve N = classify(parse_form("x^3 + y^3 - x*y*z", Q));
  EXPECT_EQ(N.cls, CurveClass::NodalCubic);
  CurveMarkers mn = curve_markers(N);
  EXPECT_EQ(*mn.singular, pt(0, 0, 1));
  ASSERT_EQ(mn.branch_tangents.size(), 2u);
  EXPECT_EQ(mn.branch_tangents[0], ln(1, 0, 0));
  EXPECT_EQ(mn.branch_tangents[1], ln(0, 1, 0));
  // Over Q the only flex of the canonical nodal cubic is (1 : -1 : 0).
  ASSERT_EQ(mn.flexes.size(), 1u);
  EXPECT_EQ(mn.flexes[0], pt(1, -1, 0));

  EXPECT_EQ(classify(parse_form("x*z - y^2", Q)).cls, CurveClass::Conic);
  EXPECT_EQ(kind_of([&] { classify(parse_form("x^2 - y^2", Q)); }), ErrorKind::DegenerateConic);
  EXPECT_EQ(kind_of([&] { classify(parse_form("x^3 + y^3 + z^3", Q)); }), ErrorKind::NotRationalCubic);
  EXPECT_EQ(classify(parse_form("x^5 - y^4*z", Q)).cls, CurveClass::HigherCuspidal);
  // Node at (0:0:1) whose tangent cone x^2 + y^2 does not split over Q.
  RationalCurve I = classify(parse_form("x^3 + x^2*z + y^2*z", Q));
  EXPECT_EQ(I.cls, CurveClass::NodalCubic);
  EXPECT_FALSE(curve_markers(I).branches_rational);
}

TEST(Curves, ParseLiterals) {
  RationalCurve C = parse_curve("curve conic canonical", Q);
  EXPECT_EQ(C.cls, CurveClass::Conic);
  EXPECT_EQ(C.literal(), "curve conic canonical");
  RationalCurve X5 = parse_curve("curve xd5 canonical", Q);
  EXPECT_EQ(X5.cls, CurveClass::HigherCuspidal);
  EXPECT_EQ(X5.literal(), "curve xd5 canonical");
  RationalCurve L = parse_curve("curve form \"x + y + z\" param \"[s : t : -s - t]\"", Q);
  EXPECT_EQ(L.cls, CurveClass::Line);
  RationalCurve back = parse_curve(L.literal(), Q);
  EXPECT_EQ(back.form, L.form);
  EXPECT_TRUE(detail::param_proportional(back.param, L.param));
  EXPECT_EQ(kind_of([&] { parse_curve("curve form \"x*z - y^2\" param \"[s^2 : s*t : s^2]\"", Q); }),
            ErrorKind::NotOnCurve);
  EXPECT_EQ(kind_of([&] { parse_curve("curve blob canonical", Q); }), ErrorKind::SyntaxError);
}

TEST(Curves, ImageCurveExamples) {
  RationalCurve L = parse_curve("curve form \"x + y + z\" param \"[s : t : -s - t]\"", Q);
  RationalCurve img = image_curve(standard_involution(Q), L);
  EXPECT_EQ(img.cls, CurveClass::Conic);
  for (auto p : {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}) EXPECT_TRUE(on_curve(p, img));
  EXPECT_TRUE(detail::pull(img.form, img.param).is_zero());

  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  RationalCurve X = image_curve(M("[x*(y + z) : x*(x + y) : z*(y + z)]"), C);
  EXPECT_EQ(X.cls, CurveClass::CuspidalCubic);

  RationalCurve same = image_curve(BirMap::identity(Q), C);
  EXPECT_EQ(same.form, C.form);

  // The line y = 0 through two base points of (yz : zx : xy) is contracted.
  RationalCurve y0 = parse_curve("curve form \"y\" param \"[s : 0 : t]\"", Q);
  EXPECT_EQ(kind_of([&] { image_curve(standard_involution(Q), y0); }), ErrorKind::CurveContracted);
}

TEST(Curves, RestrictExamples) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  // Linear map from ((1,2),(1,1)).
  MobiusMap m = restrict_map(BirMap::from_transform(veronese(Q, 1, 2, 1, 1)), C, C);
  EXPECT_EQ(m, MobiusMap(Q.of(1), Q.of(2), Q.of(1), Q.of(1)));
  BirMap s10 = M("[x*y + x*z - y^2 : x*z : y*z]");
  EXPECT_TRUE(restrict_map(s10, C, C).is_identity());
  RationalCurve X = canonical_model(CurveClass::CuspidalCubic, Q);
  EXPECT_TRUE(restrict_map(M("[x*y^2 : y^3 : 2*x^3 - y^2*z]"), X, X).is_identity());
  // A map sending C elsewhere.
  EXPECT_EQ(kind_of([&] { restrict_map(BirMap::from_transform(ProjTransform::diag(Q.one(), Q.of(2), Q.of(5))), C, C); }),
            ErrorKind::NotOnto);
}

TEST(Curves, DecIneExamples) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  BirMap s10 = M("[x*y + x*z - y^2 : x*z : y*z]");
  EXPECT_TRUE(in_ine(s10, C));
  BirMap mu2 = BirMap::from_transform(ProjTransform::diag(Q.of(4), Q.of(2), Q.one()));
  EXPECT_TRUE(in_dec(mu2, C));
  EXPECT_FALSE(in_ine(mu2, C));
  // (yz : zx : xy) preserves xz = y^2; a quadratic based off C does not.
  EXPECT_TRUE(in_dec(standard_involution(Q), C));
  EXPECT_FALSE(in_dec(quad_from_points(pt(1, 2, 0), pt(0, 1, 0), pt(1, 1, 3)).map, C));
  for (int d = 3; d <= 6; ++d) {
    RationalCurve Xd = xd_curve(d, Q);
    for (long long a : {2, -3, 5}) {
      Poly x = Poly::x(Q), y = Poly::y(Q), z = Poly::z(Q);
      BirMap tau({x * y.pow(d - 1), y.pow(d), Poly::constant(Q.of(1 - a)) * x.pow(d) + Poly::constant(Q.of(a)) * y.pow(d - 1) * z});
      EXPECT_TRUE(in_ine(tau, Xd)) << d << " " << a;
    }
  }
}

TEST(Curves, LinearMapsOfConicRecoverMatrix) {
  std::mt19937_64 rng(7);
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  for (int it = 0; it < 20; ++it) {
    long long a, b, c, d;
    do {
      a = static_cast<long long>(rng() % 9) - 4;
      b = static_cast<long long>(rng() % 9) - 4;
      c = static_cast<long long>(rng() % 9) - 4;
      d = static_cast<long long>(rng() % 9) - 4;
    } while (a * d - b * c == 0);
    BirMap T = BirMap::from_transform(veronese(Q, a, b, c, d));
    ASSERT_TRUE(in_dec(T, C));
    EXPECT_EQ(restrict_map(T, C, C), MobiusMap(Q.of(a), Q.of(b), Q.of(c), Q.of(d)));
  }
}

TEST(Curves, RestrictFunctorialProperty) {
  std::mt19937_64 rng(11);
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  for (int it = 0; it < 10; ++it) {
    auto g1 = random_transform(rng, Q), g2 = random_transform(rng, Q);
    // psi: C -> C' = g1(C), phi: C' -> C'' = g2(C').
    BirMap psi = BirMap::from_transform(g1), phi = BirMap::from_transform(g2);
    RationalCurve C1 = image_curve(psi, C), C2 = image_curve(phi, C1);
    MobiusMap lhs = restrict_map(compose(phi, psi), C, C2);
    MobiusMap rhs = restrict_map(phi, C1, C2) * restrict_map(psi, C, C1);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Curves, IneClosedUnderComposition) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  BirMap s10 = M("[x*y + x*z - y^2 : x*z : y*z]");
  BirMap s01 = M("[x*y : x*z : y*z + x*z - y^2]");
  ASSERT_TRUE(in_ine(s10, C));
  ASSERT_TRUE(in_ine(s01, C));
  EXPECT_TRUE(in_ine(compose(s10, s01), C));
  EXPECT_TRUE(in_ine(compose(s01, compose(s10, s01)), C));
}

TEST(Curves, ConicTransport) {
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  EXPECT_TRUE(conic_transport(C, C).is_identity());
  // x^2 + y^2 - z^2 with ((s^2 - t^2) : 2st : (s^2 + t^2)).
  RationalCurve D = parse_curve("curve form \"x^2 + y^2 - z^2\" param \"[s^2 - t^2 : 2*s*t : s^2 + t^2]\"", Q);
  for (auto [a, b] : {std::pair{&D, &C}, std::pair{&C, &D}}) {
    ProjTransform beta = conic_transport(*a, *b);
    Poly pulled = substitute(b->form, beta.forms());
    EXPECT_TRUE(proportional(pulled, a->form));
  }
}

TEST(Curves, CubicTransport) {
  Field F = Field::prime(10007);
  for (Field K : {Q, F}) {
    RationalCurve X = canonical_model(CurveClass::CuspidalCubic, K);
    ProjTransform b = cubic_transport(X, X);
    // (a x : y : a^3 z) shape.
    const Mat& m = b.matrix();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i != j) {
          EXPECT_TRUE(m(i, j).is_zero());
        }
      }
    EXPECT_EQ(m(2, 2) * m(1, 1).pow(2), m(0, 0).pow(3));
    RationalCurve N = canonical_model(CurveClass::NodalCubic, K);
    ProjTransform bn = cubic_transport(N, N);
    EXPECT_TRUE(proportional(substitute(N.form, bn.forms()), N.form));
  }
  // Image of C under the quadratic from the worked example, back to the model.
  RationalCurve C = canonical_model(CurveClass::Conic, Q);
  RationalCurve img = image_curve(M("[x*(y + z) : x*(x + y) : z*(y + z)]"), C);
  RationalCurve X = canonical_model(CurveClass::CuspidalCubic, Q);
  ProjTransform beta = cubic_transport(img, X);
  EXPECT_TRUE(proportional(substitute(X.form, beta.forms()), img.form));
  std::mt19937_64 rng(5);
  for (int it = 0; it < 5; ++it) {
    ProjTransform g = random_transform(rng, F);
    RationalCurve N = canonical_model(CurveClass::NodalCubic, F);
    RationalCurve N2 = image_curve(BirMap::from_transform(g), N);
    ProjTransform bt = cubic_transport(N, N2);
    EXPECT_TRUE(proportional(substitute(N2.form, bt.forms()), N.form));
  }
  EXPECT_EQ(kind_of([&] { cubic_transport(X, canonical_model(CurveClass::NodalCubic, Q)); }), ErrorKind::NoTransport);
}

TEST(Curves, NodalAutomorphismsFormS3) {
  for (std::uint64_t p : {7ull, 103ull}) {
    Field F = Field::prime(p);
    std::optional<Scalar> w;
    for (long long k = 2; k < static_cast<long long>(p) && !w; ++k)
      if (F.of(k).pow(3).is_one()) w = F.of(k);
    ASSERT_TRUE(w);
    RationalCurve N = canonical_model(CurveClass::NodalCubic, F);
    BirMap g1 = BirMap::from_transform(ProjTransform::diag(*w, *w * *w, F.one()));
    BirMap g2 = BirMap::from_transform(ProjTransform::from_rows(F, {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}));
    EXPECT_TRUE(in_dec(g1, N));
    EXPECT_TRUE(in_dec(g2, N));
    std::vector<BirMap> elems{BirMap::identity(F)};
    for (std::size_t i = 0; i < elems.size() && elems.size() < 50; ++i)
      for (auto& g : {g1, g2}) {
        BirMap h = compose(g, elems[i]);
        if (std::find(elems.begin(), elems.end(), h) == elems.end()) elems.push_back(h);
      }
    EXPECT_EQ(elems.size(), 6u);
    // Non-abelian: g1 g2 != g2 g1.
    EXPECT_NE(compose(g1, g2), compose(g2, g1));
  }
}

TEST(Curves, CuspidalScalingsPreserveModel) {
  RationalCurve X = canonical_model(CurveClass::CuspidalCubic, Q);
  for (long long a : {2LL, -3LL, 5LL, 7LL}) {
    Scalar s = Q.frac(a, 3);
    EXPECT_TRUE(in_dec(BirMap::from_transform(ProjTransform::diag(s, Q.one(), s.pow(3))), X));
  }
}
