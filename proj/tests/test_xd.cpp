#include <gtest/gtest.h>

#include "support.hpp"

using namespace cremona;
using namespace cremona::testing;

namespace {

const Field Q = Field::rationals();

ProjPoint pt(long long a, long long b, long long c) { return ProjPoint::of(Q, a, b, c); }

bool throws_kind(ErrorKind k, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST(Xd, TauBasics) {
  BirMap t2 = xd_tau(4, Q.of(2));
  EXPECT_EQ(t2.degree(), 4);
  EXPECT_TRUE(in_ine(t2, xd_curve(4, Q)));
  EXPECT_TRUE(xd_tau(4, Q.one()).is_identity());
  EXPECT_EQ(compose(xd_tau(4, Q.of(2)), xd_tau(4, Q.of(3))), xd_tau(4, Q.of(6)));
}

TEST(Xd, InvalidParameters) {
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidParameters, [] { xd_tau(3, Q.of(2)); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidParameters, [] { xd_tau(4, Q.zero()); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidParameters, [] { xd_aut(5, Q.zero()); }));
}

TEST(Xd, RandomRelations) {
  Rng rng(7);
  BirMap sigma = standard_involution(Q);
  for (int d = 4; d <= 6; ++d) {
    RationalCurve X = xd_curve(d, Q);
    EXPECT_TRUE(in_dec(sigma, X));
    EXPECT_FALSE(in_ine(sigma, X));
    for (int i = 0; i < 4; ++i) {
      Scalar a = nonzero_scalar(rng, Q), b = nonzero_scalar(rng, Q);
      BirMap ta = xd_tau(d, a), tb = xd_tau(d, b);
      EXPECT_EQ(ta.degree(), d);
      EXPECT_TRUE(in_ine(ta, X));
      EXPECT_EQ(compose(tb, ta), xd_tau(d, a * b));
      ProjTransform lam = xd_aut(d, a);
      EXPECT_TRUE(in_dec(BirMap::from_transform(lam), X));
      EXPECT_EQ(compose(sigma, lam), compose(lam.inverse(), sigma));
    }
  }
}

// Products of automorphisms and the involution collapse to lambda or lambda o sigma.
TEST(Xd, RandomWordsStayQuadratic) {
  Rng rng(11);
  for (int w = 0; w < 200; ++w) {
    int d = 4 + static_cast<int>(rng() % 3);
    BirMap g = BirMap::identity(Q);
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) {
      if (rng() % 2) g = compose(standard_involution(Q), g);
      else g = compose(xd_aut(d, nonzero_scalar(rng, Q, 4)), g);
    }
    ASSERT_LE(g.degree(), 2) << g.str();
  }
}

TEST(Xd, CheckerExamples) {
  BirMap sigma = standard_involution(Q);
  XdCheck c = xd_quadratic_checker(sigma, 4);
  ASSERT_EQ(c.verdict, XdVerdict::IsStandardUpToAut);
  EXPECT_TRUE(c.witness->is_identity());

  for (int d = 4; d <= 6; ++d) {
    ProjTransform lam = xd_aut(d, Q.of(2));
    XdCheck w = xd_quadratic_checker(compose(lam, sigma), d);
    ASSERT_EQ(w.verdict, XdVerdict::IsStandardUpToAut);
    EXPECT_EQ(BirMap::from_transform(*w.witness), BirMap::from_transform(lam));
  }

  BirMap off = quad_from_points(pt(1, 1, 1), pt(1, 0, 1), pt(0, 1, 1)).map;
  EXPECT_EQ(xd_quadratic_checker(off, 4).verdict, XdVerdict::NotInDec);
}

// Mixed pool: the checker accepts exactly the lambda o sigma members.
TEST(Xd, CheckerPool) {
  Rng rng(23);
  BirMap sigma = standard_involution(Q);
  for (int d = 4; d <= 6; ++d) {
    std::vector<std::pair<BirMap, bool>> pool;
    for (int i = 0; i < 10; ++i) pool.emplace_back(compose(xd_aut(d, nonzero_scalar(rng, Q)), sigma), true);
    while (pool.size() < 16) {
      ProjPoint p = random_point(rng, Q), q = random_point(rng, Q), r = random_point(rng, Q);
      if (p == q || p == r || q == r || collinear(p, q, r)) continue;
      pool.emplace_back(quad_from_points(p, q, r).map, false);
    }
    // Coordinate-triangle quadratics whose linear part does not preserve the curve.
    pool.emplace_back(compose(ProjTransform::from_rows(Q, {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}), sigma), false);
    pool.emplace_back(compose(ProjTransform::diag(Q.of(2), Q.one(), Q.of(3)), sigma), false);
    pool.emplace_back(xd_tau(d, Q.of(5)), false);
    pool.emplace_back(BirMap::from_transform(xd_aut(d, Q.of(3))), false);
    ASSERT_EQ(pool.size(), 20u);
    for (auto& [m, standard] : pool) {
      XdCheck c = xd_quadratic_checker(m, d);
      EXPECT_NE(c.verdict, XdVerdict::NotStandard) << m.str();
      EXPECT_EQ(c.verdict == XdVerdict::IsStandardUpToAut, standard) << m.str() << " " << c.detail;
      if (standard) {
        EXPECT_EQ(compose(*c.witness, sigma), m);
      }
    }
  }
}
