#pragma once

#include <random>

#include "cremona/decomp.hpp"

namespace cremona::testing {

using Rng = std::mt19937_64;

inline Scalar small_scalar(Rng& rng, const Field& F, int range = 9) {
  long long n = static_cast<long long>(rng() % (2 * range + 1)) - range;
  if (!F.is_rational()) return F.of(static_cast<long long>(rng() % F.modulus()));
  long long d = static_cast<long long>(rng() % 3) + 1;
  return F.frac(n, d);
}

inline Scalar nonzero_scalar(Rng& rng, const Field& F, int range = 9) {
  for (;;) {
    Scalar s = small_scalar(rng, F, range);
    if (!s.is_zero()) return s;
  }
}

inline ProjPoint random_point(Rng& rng, const Field& F) {
  return ProjPoint(small_scalar(rng, F), small_scalar(rng, F), F.one());
}

inline MobiusMap random_mobius(Rng& rng, const Field& F) {
  for (;;) {
    Scalar a = small_scalar(rng, F, 5), b = small_scalar(rng, F, 5), c = small_scalar(rng, F, 5), d = small_scalar(rng, F, 5);
    if (!(a * d - b * c).is_zero()) return MobiusMap(a, b, c, d);
  }
}

inline ProjPoint random_conic_point(Rng& rng, const Field& F) {
  return param_point(standard_conic(F), ParamPoint::affine(small_scalar(rng, F, 20)));
}

// Elementary quadratic in Dec(L), L: z = 0, with two base points off L and one on it.
inline ElementaryQuadratic random_dec_line_quadratic(Rng& rng, const Field& F) {
  for (;;) {
    ProjPoint p = random_point(rng, F), q = random_point(rng, F);
    ProjPoint r(small_scalar(rng, F), F.one(), F.zero());
    if (p == q || collinear(p, q, r)) continue;
    return dec_line_quadratic(p, q, r);
  }
}

// Word of n quadratics in Dec(L) whose product stays of degree at most 2:
// each letter shares the two off-line base points of the inverse of the next.
inline Word random_dec_line_word(Rng& rng, const Field& F, int n) {
  RationalCurve L = standard_line(F);
  Word w;
  ElementaryQuadratic cur = random_dec_line_quadratic(rng, F);
  w.push_back(FactorStep::make(cur));
  while (static_cast<int>(w.size()) < n) {
    auto inv = as_elementary_quadratic(invert(w.front().map));
    BaseSplit s = split_base_points(inv.base_points, L);
    for (;;) {
      ProjPoint r(small_scalar(rng, F), F.one(), F.zero());
      if (r == s.on[0] || collinear(s.off[0], s.off[1], r)) continue;
      w.insert(w.begin(), FactorStep::make(dec_line_quadratic(s.off[0], s.off[1], r)));
      break;
    }
  }
  return w;
}

// Elementary quadratic in Dec(C) with base points p, q on C and r off it,
// normalized so that it maps C onto the standard conic.
inline BirMap dec_conic_quadratic(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  RationalCurve C = standard_conic(p.field());
  ElementaryQuadratic e = quad_from_points(p, q, r);
  return compose(conic_transport(image_curve(e.map, C), C), e.map);
}

// want_tangent: r on the tangent at p. rational_tangents: both tangents through r rational.
inline BirMap random_dec_conic_quadratic(Rng& rng, const Field& F, bool want_tangent, bool rational_tangents = false) {
  RationalCurve C = standard_conic(F);
  for (;;) {
    ProjPoint p = random_conic_point(rng, F), q = random_conic_point(rng, F);
    if (p == q) continue;
    ProjPoint r = random_point(rng, F);
    if (want_tangent) {
      ProjLine t = tangent_at(C, p);
      r = meet(t, ProjLine(small_scalar(rng, F), small_scalar(rng, F), F.one()));
    }
    if (on_curve(r, C) || collinear(p, q, r)) continue;
    bool on_tp = is_tangent(line_through(p, r), C), on_tq = is_tangent(line_through(q, r), C);
    if (want_tangent != (on_tp || on_tq)) continue;
    if (rational_tangents) {
      try {
        tangents_through(C, r);
      } catch (const Error&) {
        continue;
      }
    }
    return dec_conic_quadratic(p, q, r);
  }
}

inline PhiElement random_phi_line_conic(Rng& rng, const Field& F) {
  for (;;) {
    ProjPoint p = random_point(rng, F), q = random_point(rng, F), r = random_point(rng, F);
    if (p == q || p == r || q == r || collinear(p, q, r)) continue;
    try {
      return phi_line_conic(p, q, r);
    } catch (const Error&) {
    }
  }
}

// shared: force the base point on C, to build degenerate pairs.
inline PhiElement random_phi_conic_cubic(Rng& rng, const Field& F, CurveClass cls, std::optional<ProjPoint> shared = {}) {
  RationalCurve C = standard_conic(F);
  for (;;) {
    ProjPoint p = shared ? *shared : random_conic_point(rng, F), q = random_point(rng, F), r = random_point(rng, F);
    if (on_curve(q, C)) continue;
    if (cls == CurveClass::CuspidalCubic) {
      std::vector<ProjLine> ts;
      try {
        ts = tangents_through(C, q);
      } catch (const Error&) {
        continue;
      }
      if (ts.empty()) continue;
      r = choose_point_on_line(ts[rng() % ts.size()], [&](const ProjPoint& s) { return s != q && !on_curve(s, C) && rng() % 3 == 0; });
    }
    try {
      return phi_conic_cubic(p, q, r, cls);
    } catch (const Error&) {
    }
  }
}

inline int quadratic_count(const Word& w) {
  int n = 0;
  for (auto& s : w) n += s.quadratic;
  return n;
}

// A primitive cube root of unity, if the field has one.
inline std::optional<Scalar> cube_root_of_unity(const Field& F) {
  if (F.is_rational()) return std::nullopt;
  for (std::uint64_t k = 2; k < F.modulus(); ++k) {
    Scalar w = F.of(static_cast<long long>(k));
    if ((w * w * w).is_one()) return w;
  }
  return std::nullopt;
}

}  // namespace cremona::testing
