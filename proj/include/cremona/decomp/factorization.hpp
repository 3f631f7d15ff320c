#pragma once

#include <string>
#include <vector>

#include "cremona/birmap.hpp"
#include "cremona/curves.hpp"

namespace cremona {

// One letter of a word: a linear map or an elementary quadratic map.
struct FactorStep {
  BirMap map;
  bool quadratic = false;
  std::vector<ProjPoint> base_points;  // sorted; empty for linear letters

  static FactorStep make(const BirMap& m) {
    FactorStep s;
    s.map = m;
    if (m.degree() == 1) return s;
    auto q = as_elementary_quadratic(m);
    s.quadratic = true;
    s.base_points.assign(q.base_points.begin(), q.base_points.end());
    return s;
  }
  static FactorStep make(const ElementaryQuadratic& q) {
    FactorStep s;
    s.map = q.map;
    s.quadratic = true;
    s.base_points.assign(q.base_points.begin(), q.base_points.end());
    std::sort(s.base_points.begin(), s.base_points.end());
    return s;
  }
  static FactorStep make(const ProjTransform& t) { return make(BirMap::from_transform(t)); }

  const char* kind() const { return quadratic ? "quadratic" : "linear"; }
  FactorStep inverse() const { return make(invert(map)); }
};

// steps[0] o steps[1] o ... ; the last step is applied first.
using Word = std::vector<FactorStep>;

inline BirMap word_product(const Word& w, const Field& F) {
  BirMap acc = BirMap::identity(F);
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = compose(it->map, acc);
  return acc;
}

inline Word word_inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline void word_append(Word& w, const Word& tail) { w.insert(w.end(), tail.begin(), tail.end()); }

// Multiplies neighbouring linear letters together and drops identities.
inline Word merge_linear(const Word& w) {
  Word out;
  for (auto& s : w) {
    if (!s.quadratic && !out.empty() && !out.back().quadratic) {
      out.back() = FactorStep::make(compose(out.back().map, s.map));
    } else {
      out.push_back(s);
    }
    if (!out.back().quadratic && out.back().map.is_identity()) out.pop_back();
  }
  return out;
}

// Folds every linear letter into a neighbouring quadratic one. A word without
// quadratic letters collapses to at most one linear letter.
inline Word absorb_linear(const Word& w) {
  Word m = merge_linear(w);
  bool any_quadratic = false;
  for (auto& s : m) any_quadratic = any_quadratic || s.quadratic;
  if (!any_quadratic) return m;
  Word out;
  std::optional<BirMap> pending;  // linear letter waiting for the next quadratic on its right
  for (auto& s : m) {
    if (!s.quadratic) {
      if (!out.empty()) {
        out.back() = FactorStep::make(compose(out.back().map, s.map));
      } else {
        pending = s.map;
      }
      continue;
    }
    out.push_back(pending ? FactorStep::make(compose(*pending, s.map)) : s);
    pending.reset();
  }
  return out;
}

struct Factorization {
  BirMap target;
  RationalCurve curve;
  Word steps;

  int quadratic_count() const {
    int n = 0;
    for (auto& s : steps) n += s.quadratic;
    return n;
  }
  int linear_count() const { return static_cast<int>(steps.size()) - quadratic_count(); }
  BirMap product() const { return word_product(steps, curve.field()); }
};

struct VerifyReport {
  bool ok = true;
  std::string detail;
};

// Every letter is linear or elementary quadratic and preserves the curve, and
// the word recomposes to the target.
inline VerifyReport verify_factorization(const Factorization& f) {
  VerifyReport r;
  for (std::size_t i = 0; i < f.steps.size(); ++i) {
    const FactorStep& s = f.steps[i];
    std::string where = "step " + std::to_string(i) + ": ";
    if (s.quadratic ? !is_elementary_quadratic(s.map) : s.map.degree() != 1) {
      r.ok = false;
      r.detail = where + "not a " + s.kind() + " letter";
      return r;
    }
    if (!in_dec(s.map, f.curve)) {
      r.ok = false;
      r.detail = where + "does not preserve the curve";
      return r;
    }
  }
  if (f.product() != f.target) {
    r.ok = false;
    r.detail = "product of the steps differs from the target";
  }
  return r;
}

}  // namespace cremona
