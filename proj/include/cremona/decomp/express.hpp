#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cremona/decomp/conic_group.hpp"
#include "cremona/decomp/factorization.hpp"

namespace cremona {

// Seed for rewriting in sigma_{a,b}: ab = -45/4 with 1 - ab = (7/2)^2, so the
// tangents from its off-conic base point are rational.
inline std::pair<Scalar, Scalar> default_seed(const Field& F) { return {F.frac(9, 2), F.frac(-5, 2)}; }

// sigma_{a,b} reached from the seed by successive conjugation relations with parameters cs.
struct SigmaChain {
  Scalar a0, b0;
  std::vector<Scalar> cs;
  Scalar a, b;  // parameters of the end result
};

inline Word sigma_chain_word(const SigmaChain& ch) {
  Word w{FactorStep::make(sigma_ab(ch.a0, ch.b0))};
  Scalar a = ch.a0, b = ch.b0;
  for (const Scalar& c : ch.cs) {
    ProjTransform l = lambda_ab(a, b), m = mu_c(c);
    Word next{FactorStep::make(l.inverse() * m.inverse())};
    word_append(next, w);
    next.push_back(FactorStep::make(m));
    word_append(next, word_inverse(w));
    next.push_back(FactorStep::make(l));
    w = std::move(next);
    std::tie(a, b) = relation_params(a, b, c);
  }
  return w;
}

namespace detail {

inline OrbitKind sigma_orbit_kind(const Scalar& a, const Scalar& b) {
  if (!a.is_zero() && !b.is_zero()) return OrbitKind::Bd;
  if (!a.is_zero()) return OrbitKind::B10;
  if (!b.is_zero()) return OrbitKind::B01;
  return OrbitKind::B00;
}

// c values sending sigma_{a,b} to sigma_{a',b'} with a'b' = d.
inline std::vector<Scalar> c_for_product(const Scalar& e, const Scalar& d) {
  const Field& F = e.field();
  Scalar k = e * (F.one() - d);
  if (k.is_zero()) return {};
  UPoly p(F, {k, Scalar(d + d) * e - F.one() - e * e, k});
  std::vector<Scalar> out;
  for (auto& c : roots(p))
    if (!c.is_zero() && !c.is_one()) out.push_back(c);
  return out;
}

// Relation parameters that land sigma_{a,b} in the target orbit in one step.
// An empty inner optional means sigma_{a,b} is already there.
inline std::optional<std::optional<Scalar>> direct_step(const Scalar& a, const Scalar& b, OrbitKind kind, const Scalar& d) {
  const Field& F = a.field();
  Scalar e = a * b;
  OrbitKind own = sigma_orbit_kind(a, b);
  if (own == kind && (kind != OrbitKind::Bd || e == d)) return std::optional<Scalar>{};
  if (e.is_zero() || e.is_one()) return std::nullopt;
  Scalar m1 = -F.one();
  switch (kind) {
    case OrbitKind::Bd: {
      auto cs = c_for_product(e, d);
      if (cs.empty()) return std::nullopt;
      return std::optional<Scalar>(cs.front());
    }
    case OrbitKind::B10:
      if (e == m1) return std::nullopt;
      return std::optional<Scalar>(e);
    case OrbitKind::B01:
      if (e == m1) return std::nullopt;
      return std::optional<Scalar>(e.inv());
    case OrbitKind::B00:
      if (e != m1) return std::nullopt;
      return std::optional<Scalar>(m1);
  }
  return std::nullopt;
}

}  // namespace detail

// Breadth-first search over chains of at most max_depth relation applications
// from the seed, for one ending in the orbit (kind, d).
inline SigmaChain find_sigma_chain(const Scalar& a0, const Scalar& b0, OrbitKind kind, const Scalar& d, int max_depth = 3) {
  const Field& F = a0.field();
  if ((a0 * b0).is_one() || a0.is_zero() || b0.is_zero())
    fail(ErrorKind::InvalidParameters, "seed needs a, b nonzero and ab != 1");
  std::deque<SigmaChain> frontier{SigmaChain{a0, b0, {}, a0, b0}};
  while (!frontier.empty()) {
    SigmaChain s = frontier.front();
    frontier.pop_front();
    if (auto st = detail::direct_step(s.a, s.b, kind, d)) {
      if (!*st) return s;
      if (static_cast<int>(s.cs.size()) < max_depth) {
        std::tie(s.a, s.b) = relation_params(s.a, s.b, **st);
        s.cs.push_back(**st);
        return s;
      }
    }
    if (static_cast<int>(s.cs.size()) + 1 >= max_depth) continue;
    Scalar e = s.a * s.b;
    if (e.is_zero() || e.is_one()) continue;
    std::vector<Scalar> cands;
    if (kind == OrbitKind::B00)
      for (auto& c : detail::c_for_product(e, -F.one())) cands.push_back(c);
    for (std::uint64_t k = 0; cands.size() < 10 && k < 40; ++k) {
      Scalar c = F.enumerate(k);
      if (c.is_zero() || c.is_one()) continue;
      if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);
    }
    for (auto& c : cands) {
      auto [a2, b2] = relation_params(s.a, s.b, c);
      Scalar e2 = a2 * b2;
      if (e2.is_zero() || e2.is_one()) continue;
      SigmaChain n = s;
      n.cs.push_back(c);
      n.a = a2;
      n.b = b2;
      frontier.push_back(std::move(n));
    }
  }
  fail(ErrorKind::SearchExhausted, "no chain of at most " + std::to_string(max_depth) + " relations reaches the orbit");
}

struct Expression {
  Word word;  // letters in Aut(C) and copies of sigma_seed and its inverse
  OrbitLabel label;
  SigmaChain chain;
};

// Writes tau in Dec(C), elementary quadratic with two base points on C, as a
// word in Aut(C) and sigma_{a,b} for the seed (a, b).
inline Expression express_quadratic_in_sigma(const BirMap& tau, const Scalar& a0, const Scalar& b0, int max_depth = 3) {
  const Field& F = tau.field();
  RationalCurve C = standard_conic(F);
  ElementaryQuadratic eq = as_elementary_quadratic(tau);
  if (!in_dec(tau, C)) fail(ErrorKind::Precondition, "map does not preserve the conic");
  OrbitLabel lt = orbit_classify(eq);
  SigmaChain ch = find_sigma_chain(a0, b0, lt.kind, lt.kind == OrbitKind::Bd ? lt.d : F.zero(), max_depth);
  ElementaryQuadratic rho = sigma_ab(ch.a, ch.b);
  OrbitLabel lr = orbit_classify(rho);
  if (!lr.same_orbit(lt)) fail(ErrorKind::VerificationFailed, "chain ended in " + lr.str() + ", wanted " + lt.str());
  // a carries the base points of rho onto those of tau.
  ProjTransform a = lt.normalizer.inverse() * lr.normalizer;
  BirMap rest = compose(compose(tau, BirMap::from_transform(a)), invert(rho.map));
  auto b = rest.as_linear();
  if (!b) fail(ErrorKind::VerificationFailed, "normalized maps differ by a non-linear factor");
  Word w{FactorStep::make(*b)};
  word_append(w, sigma_chain_word(ch));
  w.push_back(FactorStep::make(a.inverse()));
  w = merge_linear(w);
  if (word_product(w, F) != tau) fail(ErrorKind::VerificationFailed, "expression does not recompose");
  return Expression{std::move(w), lt, ch};
}

}  // namespace cremona
