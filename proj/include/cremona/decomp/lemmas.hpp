#pragma once

#include <optional>
#include <vector>

#include "cremona/decomp/express.hpp"
#include "cremona/decomp/factorization.hpp"
#include "cremona/decomp/phi.hpp"

namespace cremona {

namespace detail {

inline bool incident(const ProjLine& l, const ProjPoint& p) {
  return (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]).is_zero();
}

// Letters psi_{i+1} o psi_i^{-1} of the chain, leftmost first, so that the
// word evaluates to chain.back() o chain.front()^{-1}.
inline Word chain_word(const std::vector<PhiElement>& chain) {
  Word w;
  for (std::size_t i = chain.size() - 1; i >= 1; --i)
    w.push_back(FactorStep::make(compose(chain[i].map, invert(chain[i - 1].map))));
  return w;
}

inline std::vector<ProjPoint> with(std::vector<ProjPoint> v, const std::vector<ProjPoint>& more) {
  v.insert(v.end(), more.begin(), more.end());
  return v;
}

inline std::vector<ProjPoint> points_of(const PhiElement& f) { return {f.base_points.begin(), f.base_points.end()}; }

}  // namespace detail

// ---- line to conic ----

inline std::optional<Word> lemma_b_conic_direct(const PhiElement& f1, const PhiElement& f2) {
  auto [p1, q1, r1] = f1.base_points;
  auto [p2, q2, r2] = f2.base_points;
  if (!general_position({p1, q1, r1, p2, q2, r2})) return std::nullopt;
  try {
    return detail::chain_word({f1, phi_line_conic(p1, q1, r2), phi_line_conic(p1, q2, r2), f2});
  } catch (const Error&) {
    return std::nullopt;
  }
}

// A word in Dec(C) for f2 o f1^{-1}, f1 and f2 in Phi(L, C).
inline Word lemma_b_conic(const PhiElement& f1, const PhiElement& f2) {
  if (f1.map == f2.map) return {};
  if (auto w = lemma_b_conic_direct(f1, f2)) return *w;
  const Field& F = f1.map.field();
  RationalCurve L = standard_line(F);
  std::vector<ProjPoint> a = detail::points_of(f1), b = detail::points_of(f2), chosen;
  for (int i = 0; i < 3; ++i)
    chosen.push_back(choose_general_point(F, [&](const ProjPoint& p) {
      return !on_curve(p, L) && general_with(p, detail::with(a, chosen)) && general_with(p, detail::with(b, chosen));
    }));
  PhiElement f3 = phi_line_conic(chosen[0], chosen[1], chosen[2]);
  auto w1 = lemma_b_conic_direct(f1, f3), w2 = lemma_b_conic_direct(f3, f2);
  if (!w1 || !w2) fail(ErrorKind::SearchExhausted, "intertwining map does not give general position");
  Word w = *w2;
  word_append(w, *w1);
  return w;
}

struct LetterLift {
  PhiElement phi, psi;
  Word inner;  // phi o tau o psi^{-1}; empty for the identity
};

// phi, psi in Phi(L, C) with phi o tau o psi^{-1} the identity.
inline LetterLift lemma_c_conic(const BirMap& tau) {
  const Field& F = tau.field();
  RationalCurve L = standard_line(F), C = standard_conic(F);
  if (tau.degree() != 2) fail(ErrorKind::Precondition, "expected an elementary quadratic map");
  ElementaryQuadratic eq = as_elementary_quadratic(tau);
  BaseSplit s = split_base_points(eq.base_points, L);
  if (s.on.size() != 1 || !in_dec(tau, L))
    fail(ErrorKind::WrongBasePointPattern, "map is not in Dec(L) with one base point on L");
  const ProjPoint &p = s.off[0], &q = s.off[1], &r = s.on[0];
  ProjPoint sp = choose_general_point(F, [&](const ProjPoint& x) { return !on_curve(x, L) && general_with(x, {p, q, r}); });
  PhiElement psi = phi_line_conic(p, q, sp);
  PhiElement phi = as_phi_element(compose(psi.map, invert(tau)), L, C);
  return LetterLift{phi, psi, {}};
}

// ---- conic to cubic ----

namespace detail {

// Chain of Phi(C, X) elements from f1 to f2 with the base points in the given roles.
inline std::optional<std::vector<PhiElement>> cubic_chain(const PhiElement& f1, const PhiElement& f2, const ProjPoint& p1,
                                                          const ProjPoint& q1, const ProjPoint& r1, const ProjPoint& p2,
                                                          const ProjPoint& q2, const ProjPoint& r2) {
  CurveClass cls = f1.target.cls;
  const RationalCurve& C = f1.source;
  try {
    if (cls == CurveClass::NodalCubic)
      return std::vector<PhiElement>{f1, phi_conic_cubic(p1, q1, r2, cls), phi_conic_cubic(p1, q2, r2, cls), f2};
    auto other_tangent = [&](const ProjPoint& q, const ProjPoint& r) -> std::optional<ProjLine> {
      for (auto& l : tangents_through(C, q))
        if (!incident(l, r)) return l;
      return std::nullopt;
    };
    auto l1 = other_tangent(q1, r1), l2 = other_tangent(q2, r2);
    if (!l1 || !l2 || *l1 == *l2) return std::nullopt;
    ProjPoint s = meet(*l1, *l2);
    if (on_curve(s, C) || !general_position({p1, q1, r1, p2, q2, r2, s})) return std::nullopt;
    return std::vector<PhiElement>{f1, phi_conic_cubic(p1, q1, s, cls), phi_conic_cubic(p1, q2, s, cls),
                                   phi_conic_cubic(p2, q2, s, cls), f2};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace detail

// The proof's chain for f2 o f1^{-1}, trying both labellings of the two
// off-conic base points of each map.
inline std::optional<Word> lemma_b_cubic_direct(const PhiElement& f1, const PhiElement& f2) {
  auto [p1, a1, b1] = f1.base_points;
  auto [p2, a2, b2] = f2.base_points;
  if (!general_position({p1, a1, b1, p2, a2, b2})) return std::nullopt;
  for (int swap = 0; swap < 4; ++swap) {
    const ProjPoint &q1 = swap & 1 ? b1 : a1, &r1 = swap & 1 ? a1 : b1;
    const ProjPoint &q2 = swap & 2 ? b2 : a2, &r2 = swap & 2 ? a2 : b2;
    auto chain = detail::cubic_chain(f1, f2, p1, q1, r1, p2, q2, r2);
    if (!chain) continue;
    try {
      return detail::chain_word(*chain);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

namespace detail {

// Candidate third maps for intertwining, in enumeration order.
inline std::optional<Word> intertwine_cubic(const PhiElement& f1, const PhiElement& f2) {
  const RationalCurve& C = f1.source;
  const Field& F = C.field();
  CurveClass cls = f1.target.cls;
  std::vector<ProjPoint> a = points_of(f1), b = points_of(f2);
  auto general = [&](const ProjPoint& x, const std::vector<ProjPoint>& extra) {
    return general_with(x, with(a, extra)) && general_with(x, with(b, extra));
  };
  int tried = 0;
  for (std::uint64_t k = 0; k < 40 && tried < 60; ++k) {
    ProjPoint p3 = curve_point(C, k);
    if (!general(p3, {})) continue;
    std::vector<ProjPoint> qs;
    for (std::uint64_t s = 0, n = 0; s < 30 && qs.size() < 6; ++s)
      for (std::uint64_t i = 0; i <= s && qs.size() < 6; ++i, ++n) {
        ProjPoint q(F.enumerate(i), F.enumerate(s - i), F.one());
        if (on_curve(q, C) || !general(q, {p3})) continue;
        if (cls == CurveClass::CuspidalCubic) {
          try {
            tangents_through(C, q);
          } catch (const Error&) {
            continue;
          }
        }
        qs.push_back(q);
      }
    for (auto& q3 : qs) {
      ++tried;
      try {
        PointFilter ok = [&](const ProjPoint& r) {
          if (on_curve(r, C) || r == q3 || !general(r, {p3, q3})) return false;
          return cls == CurveClass::CuspidalCubic || meets_rationally(line_through(q3, r), C);
        };
        ProjPoint r3 = cls == CurveClass::CuspidalCubic ? choose_point_on_line(tangents_through(C, q3)[0], ok, 200)
                                                         : choose_general_point(F, ok, 400);
        PhiElement f3 = phi_conic_cubic(p3, q3, r3, cls);
        auto w1 = lemma_b_cubic_direct(f1, f3);
        if (!w1) continue;
        auto w2 = lemma_b_cubic_direct(f3, f2);
        if (!w2) continue;
        Word w = *w2;
        word_append(w, *w1);
        return w;
      } catch (const Error&) {
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// A word in Dec(X) for f2 o f1^{-1}, f1 and f2 in Phi(C, X).
inline Word lemma_b_cubic(const PhiElement& f1, const PhiElement& f2) {
  if (f1.target.form != f2.target.form) fail(ErrorKind::Precondition, "maps target different cubics");
  if (f1.map == f2.map) return {};
  if (auto w = lemma_b_cubic_direct(f1, f2)) return *w;
  if (auto w = detail::intertwine_cubic(f1, f2)) return *w;
  fail(ErrorKind::SearchExhausted, "no intertwining map found");
}

namespace detail {

// phi, psi with phi o tau o psi^{-1} = id for tau not contracting a tangent.
inline LetterLift lemma_c_cubic_avoiding(const BirMap& tau, const OrbitLabel& lab, CurveClass cls) {
  const Field& F = tau.field();
  RationalCurve C = standard_conic(F), X = canonical_model(cls, F);
  const ProjPoint &p = lab.base_points[0], &q = lab.base_points[1], &r = lab.base_points[2];
  ProjLine tp = tangent_at(C, p), tq = tangent_at(C, q);
  std::optional<PhiElement> psi;
  std::optional<Error> last;
  PointFilter ok = [&](const ProjPoint& s) {
    if (on_curve(s, C) || s == r || !general_with(s, {p, q, r}) || incident(tp, s) || incident(tq, s)) return false;
    if (cls == CurveClass::NodalCubic && !meets_rationally(line_through(r, s), C)) return false;
    try {
      psi = phi_conic_cubic(p, r, s, cls);
      return true;
    } catch (const Error& e) {
      last = e;
      return false;
    }
  };
  try {
    if (cls == CurveClass::CuspidalCubic) {
      choose_point_on_line(tangents_through(C, r)[0], ok, 300);
    } else {
      choose_general_point(F, ok, 600);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SearchExhausted && last) throw *last;
    throw;
  }
  PhiElement phi = as_phi_element(compose(psi->map, invert(tau)), C, X);
  return LetterLift{phi, *psi, {}};
}

}  // namespace detail

// Whether the direct construction applies to tau in Dec(C): tau must not
// contract a tangent to C, and for the cuspidal cubic the tangents through
// its off-conic base point must be rational.
inline bool lifts_directly(const OrbitLabel& lab, CurveClass cls) {
  if (lab.tangent()) return false;
  if (cls != CurveClass::CuspidalCubic) return true;
  try {
    tangents_through(standard_conic(lab.base_points[2].field()), lab.base_points[2]);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FieldExtensionRequired) throw;
    return false;
  }
  return true;
}

// Rewrites a word over Dec(C) so that every quadratic letter lifts directly:
// the others are written in sigma_{a0,b0} and Aut(C) first.
inline Word cubic_ready_word(const Word& w, CurveClass cls, const Scalar& a0, const Scalar& b0) {
  Word out;
  for (auto& s : w) {
    if (!s.quadratic || lifts_directly(orbit_classify(as_elementary_quadratic(s.map)), cls)) {
      out.push_back(s);
    } else {
      word_append(out, express_quadratic_in_sigma(s.map, a0, b0).word);
    }
  }
  return absorb_linear(out);
}

// phi, psi in Phi(C, X) and a word in Dec(X) for phi o tau o psi^{-1}. Letters
// that do not lift directly are first written in sigma_{a0,b0} and Aut(C).
inline LetterLift lemma_c_cubic(const BirMap& tau, CurveClass cls, const Scalar& a0, const Scalar& b0) {
  const Field& F = tau.field();
  RationalCurve C = standard_conic(F);
  if (tau.degree() != 2) fail(ErrorKind::Precondition, "expected an elementary quadratic map");
  ElementaryQuadratic eq = as_elementary_quadratic(tau);
  OrbitLabel lab = orbit_classify(eq);
  if (!in_dec(tau, C)) fail(ErrorKind::WrongBasePointPattern, "map does not preserve the conic");
  if (lifts_directly(lab, cls)) return detail::lemma_c_cubic_avoiding(tau, lab, cls);

  Word letters = cubic_ready_word({FactorStep::make(tau)}, cls, a0, b0);
  // tau = L_0 ... L_{n-1} with L_i = phi_i^{-1} psi_i, so
  // phi_0 tau psi_{n-1}^{-1} = (psi_0 phi_1^{-1}) ... (psi_{n-2} phi_{n-1}^{-1}).
  std::vector<LetterLift> parts;
  for (auto& l : letters) parts.push_back(detail::lemma_c_cubic_avoiding(l.map, orbit_classify(as_elementary_quadratic(l.map)), cls));
  Word inner;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) word_append(inner, lemma_b_cubic(parts[i + 1].phi, parts[i].psi));
  return LetterLift{parts.front().phi, parts.back().psi, inner};
}

}  // namespace cremona
