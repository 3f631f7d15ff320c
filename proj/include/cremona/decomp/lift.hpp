#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cremona/decomp/lemmas.hpp"

namespace cremona {

// The element (x(y+z) : x(x+y) : z(y+z)) of Phi(C, X) for the cuspidal cubic x^3 = y^2 z.
inline PhiElement cuspidal_example_phi(const Field& F) {
  Poly x = Poly::x(F), y = Poly::y(F), z = Poly::z(F);
  BirMap m({x * (y + z), x * (x + y), z * (y + z)});
  return as_phi_element(m, standard_conic(F), canonical_model(CurveClass::CuspidalCubic, F));
}

// First element of Phi(C, X) in enumeration order, P on the conic first.
inline PhiElement default_phi_conic_cubic(CurveClass cls, const Field& F) {
  RationalCurve C = standard_conic(F);
  for (std::uint64_t k = 0; k < 20; ++k) {
    ProjPoint p = curve_point(C, k);
    std::optional<PhiElement> out;
    try {
      choose_general_point(
          F,
          [&](const ProjPoint& q) {
            if (on_curve(q, C) || q == p) return false;
            std::vector<ProjLine> ts;
            try {
              ts = tangents_through(C, q);
            } catch (const Error&) {
              if (cls == CurveClass::CuspidalCubic) return false;
            }
            PointFilter ok = [&](const ProjPoint& r) {
              if (on_curve(r, C) || r == q || collinear(p, q, r)) return false;
              if (cls == CurveClass::NodalCubic && !meets_rationally(line_through(q, r), C)) return false;
              try {
                out = phi_conic_cubic(p, q, r, cls);
                return true;
              } catch (const Error&) {
                return false;
              }
            };
            try {
              if (cls == CurveClass::CuspidalCubic) {
                choose_point_on_line(ts[0], ok, 50);
              } else {
                choose_general_point(F, ok, 50);
              }
              return true;
            } catch (const Error&) {
              return false;
            }
          },
          30);
      return *out;
    } catch (const Error&) {
    }
  }
  fail(ErrorKind::SearchExhausted, std::string("no rational element of Phi(C, X) for the ") + class_name(cls) + " cubic");
}

// Assembles tau = psi tau' phi^{-1} from a word for tau' over the source
// curve. lemma_c(letter) gives phi_i, psi_i and a word for phi_i tau_i psi_i^{-1};
// lemma_b(f1, f2) gives a word for f2 f1^{-1}.
template <class LetterFn, class ChainFn>
Word lift_word(const Word& source, const PhiElement& phi, const PhiElement& psi, LetterFn lemma_c, ChainFn lemma_b) {
  Word letters = absorb_linear(source);
  if (letters.empty() || !letters.front().quadratic) {
    PhiElement psi_t = psi;
    if (!letters.empty()) psi_t = as_phi_element(compose(psi.map, letters.front().map), psi.source, psi.target);
    return lemma_b(phi, psi_t);
  }
  // tau' = L_0 ... L_{n-1} with L_i = phi_i^{-1} inner_i psi_i, so
  // tau = (psi phi_0^{-1}) inner_0 (psi_0 phi_1^{-1}) inner_1 ... inner_{n-1} (psi_{n-1} phi^{-1}).
  std::vector<LetterLift> parts;
  for (auto& l : letters) parts.push_back(lemma_c(l.map));
  Word out = lemma_b(parts.front().phi, psi);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    word_append(out, parts[i].inner);
    const PhiElement& next = i + 1 < parts.size() ? parts[i + 1].phi : phi;
    word_append(out, lemma_b(next, parts[i].psi));
  }
  return out;
}

inline Factorization checked(Factorization f) {
  if (f.product() != f.target) fail(ErrorKind::VerificationFailed, "assembled word does not recompose to the target");
  return f;
}

// Word over Dec(C) for tau, given a word over Dec(L) for psi^{-1} tau phi.
inline Factorization lift_conic(const BirMap& tau, const Word& source, const PhiElement& phi, const PhiElement& psi) {
  Word w = lift_word(source, phi, psi, lemma_c_conic, lemma_b_conic);
  return checked(Factorization{tau, standard_conic(tau.field()), merge_linear(w)});
}

// Word over Dec(X) for tau, given a word over Dec(C) for psi^{-1} tau phi.
inline Factorization lift_cubic(const BirMap& tau, const Word& source, const PhiElement& phi, const PhiElement& psi,
                                const Scalar& a0, const Scalar& b0) {
  CurveClass cls = phi.target.cls;
  auto lc = [&](const BirMap& t) { return lemma_c_cubic(t, cls, a0, b0); };
  Word w = lift_word(cubic_ready_word(source, cls, a0, b0), phi, psi, lc, lemma_b_cubic);
  return checked(Factorization{tau, phi.target, merge_linear(w)});
}

// Dispatches on the source curve: a Dec(L) word lifts to the conic, a Dec(C)
// word to the cubic phi maps onto.
inline Factorization lift_factorization(const BirMap& tau, const Factorization& source, const PhiElement& phi,
                                        const PhiElement& psi, std::optional<std::pair<Scalar, Scalar>> seed = {}) {
  if (!verify_factorization(source).ok) fail(ErrorKind::VerificationFailed, "source factorization does not verify");
  if (source.curve.cls == CurveClass::Line) return lift_conic(tau, source.steps, phi, psi);
  if (source.curve.cls != CurveClass::Conic) fail(ErrorKind::Precondition, "source must factor over the line or the conic");
  if (!seed) seed = default_seed(tau.field());
  return lift_cubic(tau, source.steps, phi, psi, seed->first, seed->second);
}

// psi^{-1} o tau o phi.
inline BirMap conjugate_back(const BirMap& tau, const PhiElement& phi, const PhiElement& psi) {
  return compose(compose(invert(psi.map), tau), phi.map);
}

// A source of words for maps in Dec(L) (or Dec(C)).
using WordOracle = std::function<Word(const BirMap&)>;

// Answers only for the one map whose word it was given.
inline WordOracle passthrough_oracle(Word known, const Field& F) {
  BirMap target = word_product(known, F);
  return [known = std::move(known), target](const BirMap& q) {
    if (q != target) fail(ErrorKind::OracleUnavailable, "oracle has no word for " + q.str());
    return known;
  };
}

inline WordOracle unavailable_oracle() {
  return [](const BirMap& q) -> Word { fail(ErrorKind::OracleUnavailable, "no factorization available over Dec(L) for " + q.str()); };
}

inline Factorization factor_dec_conic(const BirMap& tau, const WordOracle& line_oracle, std::optional<PhiElement> phi = {},
                                      std::optional<PhiElement> psi = {}) {
  const Field& F = tau.field();
  RationalCurve C = standard_conic(F);
  if (!in_dec(tau, C)) fail(ErrorKind::Precondition, "map does not preserve the conic");
  if (tau.degree() == 1) return Factorization{tau, C, {FactorStep::make(tau)}};
  if (!phi) phi = default_phi_line_conic(F);
  if (!psi) psi = phi;
  return lift_conic(tau, line_oracle(conjugate_back(tau, *phi, *psi)), *phi, *psi);
}

namespace detail {

struct Weighted {
  int mult;
  ProjPoint p;
};

// Proper base points split by incidence with C, worst first.
inline std::pair<std::vector<Weighted>, std::vector<Weighted>> weighted_base_points(const BirMap& f, const RationalCurve& C) {
  std::vector<Weighted> on, off;
  for (auto& p : proper_base_points(f)) (on_curve(p, C) ? on : off).push_back({base_point_multiplicity(f, p), p});
  auto worst = [](const Weighted& a, const Weighted& b) { return a.mult != b.mult ? a.mult > b.mult : a.p < b.p; };
  std::sort(on.begin(), on.end(), worst);
  std::sort(off.begin(), off.end(), worst);
  return {on, off};
}

// Usable as the off-conic base point of a reduction step at p, q on C.
inline bool reduction_admissible(const ProjPoint& r, const ProjPoint& p, const ProjPoint& q, const RationalCurve& C) {
  if (on_curve(r, C) || r == p || r == q || collinear(p, q, r)) return false;
  if (incident(tangent_at(C, p), r) || incident(tangent_at(C, q), r)) return false;
  try {
    tangents_through(C, r);
  } catch (const Error&) {
    return false;
  }
  return true;
}

// Degree after the best admissible step at proper base points only.
inline int next_degree_bound(const BirMap& f, const RationalCurve& C) {
  auto [on, off] = weighted_base_points(f, C);
  int best = 0;
  for (std::size_t i = 0; i < on.size(); ++i)
    for (std::size_t j = i + 1; j < on.size(); ++j) {
      int m = on[i].mult + on[j].mult;
      for (auto& w : off)
        if (reduction_admissible(w.p, on[i].p, on[j].p, C)) {
          m += w.mult;
          break;
        }
      best = std::max(best, m);
    }
  return 2 * f.degree() - best;
}

}  // namespace detail

// Degree reduction inside Dec(C): f = l o q_k o ... o q_1 with q_i elementary
// quadratic in Dec(C), two base points on C and one off, not contracting a
// tangent, and each off-conic base point having rational tangents to C. Each
// step takes the lowest next degree, then the lowest degree reachable from
// proper base points one step later.
inline Factorization reduce_dec_conic(const BirMap& f, int max_steps = 12) {
  const Field& F = f.field();
  RationalCurve C = standard_conic(F);
  if (!in_dec(f, C)) fail(ErrorKind::Precondition, "map does not preserve the conic");
  auto admissible_r = [&](const ProjPoint& r, const ProjPoint& p, const ProjPoint& q) {
    return detail::reduction_admissible(r, p, q, C);
  };
  auto build = [&](const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    ElementaryQuadratic e = quad_from_points(p, q, r);
    return compose(conic_transport(image_curve(e.map, C), C), e.map);
  };
  BirMap cur = f;
  Word qs;  // q_1 first
  while (cur.degree() > 1) {
    if (static_cast<int>(qs.size()) >= max_steps) fail(ErrorKind::SearchExhausted, "degree reduction did not terminate");
    auto [on, off] = detail::weighted_base_points(cur, C);
    for (std::uint64_t k = 0; on.size() < 3; ++k) {
      ProjPoint p = curve_point(C, k);
      if (std::none_of(on.begin(), on.end(), [&](auto& e) { return e.p == p; })) on.push_back({0, p});
    }
    std::optional<BirMap> best;
    std::pair<int, int> best_key;
    auto consider = [&](const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
      if (!admissible_r(r, p, q)) return;
      BirMap qm = build(p, q, r);
      BirMap next = compose(cur, invert(qm));
      if (next.degree() > cur.degree()) return;
      std::pair<int, int> key{next.degree(), next.degree() > 1 ? detail::next_degree_bound(next, C) : 0};
      if (!best || key < best_key) {
        best = qm;
        best_key = key;
      }
    };
    for (std::size_t i = 0; i < on.size(); ++i)
      for (std::size_t j = i + 1; j < on.size(); ++j) {
        const ProjPoint &p = on[i].p, &q = on[j].p;
        if (on[i].mult + on[j].mult == 0) continue;
        for (auto& w : off) consider(p, q, w.p);
        // Points with rational tangents are meets of two tangents at rational points.
        int extra = 0;
        for (std::uint64_t j = 1; j < 24 && extra < 10; ++j)
          for (std::uint64_t i = 0; i < j && extra < 10; ++i) {
            ProjPoint r = meet(tangent_at(C, curve_point(C, i)), tangent_at(C, curve_point(C, j)));
            if (!admissible_r(r, p, q)) continue;
            consider(p, q, r);
            ++extra;
          }
      }
    if (!best) fail(ErrorKind::SearchExhausted, "no admissible reduction step");
    qs.push_back(FactorStep::make(*best));
    cur = compose(cur, invert(*best));
  }
  Word w{FactorStep::make(cur)};
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) w.push_back(*it);
  return checked(Factorization{f, C, merge_linear(w)});
}

inline WordOracle conic_oracle_from_line(WordOracle line_oracle) {
  return [line_oracle = std::move(line_oracle)](const BirMap& t) { return factor_dec_conic(t, line_oracle).steps; };
}

inline WordOracle conic_oracle_by_reduction() {
  return [](const BirMap& t) { return reduce_dec_conic(t).steps; };
}

inline Factorization factor_dec_cubic(const BirMap& tau, const RationalCurve& X, const WordOracle& conic_oracle,
                                      std::optional<PhiElement> phi = {}, std::optional<PhiElement> psi = {},
                                      std::optional<std::pair<Scalar, Scalar>> seed = {}) {
  const Field& F = tau.field();
  if (X.cls != CurveClass::NodalCubic && X.cls != CurveClass::CuspidalCubic)
    fail(ErrorKind::Precondition, "expected a nodal or cuspidal cubic");
  if (X.form != canonical_model(X.cls, F).form) fail(ErrorKind::Precondition, "cubic must be in canonical form");
  if (!in_dec(tau, X)) fail(ErrorKind::Precondition, "map does not preserve the cubic");
  if (tau.degree() == 1) return Factorization{tau, X, {FactorStep::make(tau)}};
  if (!phi) phi = default_phi_conic_cubic(X.cls, F);
  if (!psi) psi = phi;
  if (!seed) seed = default_seed(F);
  return lift_cubic(tau, conic_oracle(conjugate_back(tau, *phi, *psi)), *phi, *psi, seed->first, seed->second);
}

}  // namespace cremona
