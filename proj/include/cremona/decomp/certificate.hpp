#pragma once

#include <string>

#include <json.hpp>

#include "cremona/decomp/factorization.hpp"

namespace cremona {

using json = nlohmann::json;

inline json factorization_stats(const Factorization& f) {
  int max_deg = 0;
  for (auto& s : f.steps) max_deg = std::max(max_deg, s.map.degree());
  return json{{"quadratic_count", f.quadratic_count()},
              {"linear_count", f.linear_count()},
              {"target_degree", f.target.degree()},
              {"max_step_degree", max_deg}};
}

// Self-contained record: field, curve, target and steps as literals.
inline json certificate_json(const Factorization& f, bool verified) {
  json steps = json::array();
  for (auto& s : f.steps) {
    json bp = json::array();
    for (auto& p : s.base_points) bp.push_back(p.str());
    steps.push_back(json{{"kind", s.kind()}, {"map", s.map.str()}, {"base_points", bp}});
  }
  return json{{"field", f.curve.field().name()},
              {"target", f.target.str()},
              {"curve", f.curve.literal()},
              {"steps", steps},
              {"stats", factorization_stats(f)},
              {"verified", verified}};
}

// Verifies f and records the outcome.
inline json emit_certificate(const Factorization& f) { return certificate_json(f, verify_factorization(f).ok); }

inline Factorization parse_certificate(const json& j) {
  try {
    Field F = Field::parse(j.value("field", std::string("q")));
    Factorization f{parse_map(j.at("target").get<std::string>(), F), parse_curve(j.at("curve").get<std::string>(), F), {}};
    for (auto& s : j.at("steps")) {
      FactorStep st;
      st.map = parse_map(s.at("map").get<std::string>(), F);
      st.quadratic = s.at("kind").get<std::string>() == "quadratic";
      for (auto& p : s.at("base_points")) st.base_points.push_back(parse_point(p.get<std::string>(), F));
      f.steps.push_back(std::move(st));
    }
    return f;
  } catch (const json::exception& e) {
    fail(ErrorKind::SyntaxError, std::string("malformed certificate: ") + e.what());
  }
}

// Re-checks a certificate from its literals alone; the recorded "verified"
// flag and stats are compared against what is recomputed.
inline VerifyReport verify_certificate(const json& j) {
  Factorization f = parse_certificate(j);
  VerifyReport r = verify_factorization(f);
  if (!r.ok) return r;
  for (std::size_t i = 0; i < f.steps.size(); ++i) {
    const FactorStep& s = f.steps[i];
    if (!s.quadratic) {
      if (!s.base_points.empty()) return {false, "step " + std::to_string(i) + ": linear letter lists base points"};
      continue;
    }
    auto q = as_elementary_quadratic(s.map);
    std::vector<ProjPoint> bp(q.base_points.begin(), q.base_points.end()), listed = s.base_points;
    std::sort(bp.begin(), bp.end());
    std::sort(listed.begin(), listed.end());
    if (bp != listed) return {false, "step " + std::to_string(i) + ": listed base points differ from the map's"};
  }
  if (j.contains("stats") && j["stats"] != factorization_stats(f)) return {false, "recorded stats differ from the steps"};
  if (j.contains("verified") && !j["verified"].get<bool>()) return {false, "certificate records a failed verification"};
  return r;
}

}  // namespace cremona
