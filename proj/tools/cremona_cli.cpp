#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cremona/decomp.hpp"

using namespace cremona;

namespace {

enum Exit { kOk = 0, kInput = 1, kMath = 2, kResource = 3 };

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::NonHomogeneous:
    case ErrorKind::BadField:
    case ErrorKind::FieldMismatch:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::InvalidParameters:
    case ErrorKind::EqualPoints:
    case ErrorKind::CollinearPoints:
      return kInput;
    case ErrorKind::SearchExhausted:
      return kResource;
    default:
      return kMath;
  }
}

struct Options {
  std::string field = "q";
  bool field_given = false;
  bool json = false;
  std::string out;
  std::string oracle;
  std::vector<std::string> seed_ab;
};

// What a verb produced: a JSON value, its text rendering, and an exit code.
struct Report {
  json value;
  std::string text;
  int code = kOk;
  json certificate;  // what --out writes, when the verb produced one

  Report() = default;
  Report(json v, std::string t, int c, json cert = nullptr)
      : value(std::move(v)), text(std::move(t)), code(c), certificate(std::move(cert)) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::SyntaxError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::SyntaxError, path + ": " + e.what());
  }
}

// Bare class names ("conic", "xd5") stand for the canonical models.
RationalCurve curve_arg(const std::string& text, const Field& F) {
  if (text.find_first_of(" \t\"") == std::string::npos && text != "curve") return parse_curve("curve " + text + " canonical", F);
  return parse_curve(text, F);
}

std::pair<Scalar, Scalar> seed_of(const Options& o, const Field& F) {
  if (o.seed_ab.empty()) return default_seed(F);
  return {F.parse_scalar(o.seed_ab[0]), F.parse_scalar(o.seed_ab[1])};
}

Report map_report(const BirMap& m) {
  return {json{{"map", m.str()}, {"degree", m.degree()}}, m.str() + "\ndegree " + std::to_string(m.degree()), kOk};
}

Report factorization_report(const Factorization& f) {
  VerifyReport v = verify_factorization(f);
  json cert = certificate_json(f, v.ok);
  std::ostringstream t;
  t << "curve: " << f.curve.literal() << "\n";
  t << "target: " << f.target.str() << "\n";
  for (std::size_t i = 0; i < f.steps.size(); ++i) t << "  " << i << " " << f.steps[i].kind() << " " << f.steps[i].map.str() << "\n";
  t << "quadratic: " << f.quadratic_count() << ", linear: " << f.linear_count() << "\n";
  t << "verified: " << (v.ok ? "yes" : "no: " + v.detail);
  return {cert, t.str(), v.ok ? kOk : kMath, cert};
}

Report membership_report(const std::string& what, bool yes) {
  return {json{{what, yes}}, yes ? "true" : "false", yes ? kOk : kMath};
}

WordOracle line_oracle_from(const Options& o, const Field& F) {
  if (o.oracle.empty()) return unavailable_oracle();
  Factorization src = parse_certificate(read_json(o.oracle));
  if (src.curve.field().name() != F.name()) fail(ErrorKind::FieldMismatch, "oracle certificate is over " + src.curve.field().name());
  if (src.curve.cls != CurveClass::Line) fail(ErrorKind::Precondition, "oracle certificate must factor a map in Dec(L)");
  return passthrough_oracle(src.steps, F);
}

Report demo_cuspidal(const Options& o) {
  Field Q = Field::rationals();
  std::ostringstream t;
  json j;
  BirMap tau = parse_map("[x*y^2 : y^3 : 2*x^3 - y^2*z]", Q);
  RationalCurve XQ = canonical_model(CurveClass::CuspidalCubic, Q);
  PhiElement phiQ = cuspidal_example_phi(Q);
  BirMap tp = conjugate_back(tau, phiQ, phiQ);
  std::size_t nbp = proper_base_points(tp).size();
  bool ine = in_ine(tau, XQ), inv = compose(tau, tau).is_identity();
  j["tau"] = tau.str();
  j["tau_in_ine"] = ine;
  j["tau_involution"] = inv;
  j["phi"] = phiQ.map.str();
  j["conjugate"] = tp.str();
  j["conjugate_degree"] = tp.degree();
  j["conjugate_base_points"] = nbp;
  t << "tau = " << tau.str() << " on " << XQ.literal() << "\n";
  t << "tau in Ine(X): " << (ine ? "true" : "false") << ", tau^2 = id: " << (inv ? "true" : "false") << "\n";
  t << "phi = " << phiQ.map.str() << "\n";
  t << "phi^-1 tau phi = " << tp.str() << "\n";
  t << "degree " << tp.degree() << ", " << nbp << " proper base points\n";

  // The Dec(C) step needs tangent lines from points off C that are irrational
  // over Q for this example, so the pipeline runs over a prime field.
  Field F = o.field_given ? Field::parse(o.field) : Field::prime(10007);
  j["pipeline_field"] = F.name();
  try {
    RationalCurve X = canonical_model(CurveClass::CuspidalCubic, F);
    PhiElement phi = cuspidal_example_phi(F);
    Factorization f = factor_dec_cubic(parse_map(tau.str(), F), X, conic_oracle_by_reduction(), phi, phi, seed_of(o, F));
    Report r = factorization_report(f);
    j["certificate"] = r.value;
    t << "pipeline over " << F.name() << ": " << f.quadratic_count() << " quadratic steps, "
      << (r.code == kOk ? "verified" : "NOT verified") << "\n";
    return {j, t.str() + r.text, r.code, r.value};
  } catch (const Error& e) {
    j["pipeline_error"] = e.what();
    t << "pipeline over " << F.name() << " failed: " << e.what();
    if (F.is_rational()) t << "\n(the tangent lines the conic step needs are not defined over Q; try --field fp:10007)";
    return {j, t.str(), exit_code_for(e.kind())};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factor plane birational maps preserving a line, conic or rational cubic into elementary quadratic maps."};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "q or fp:<p> with p > 3")->each([&](const std::string&) { o.field_given = true; });
  app.add_flag("--json", o.json, "print JSON");
  app.add_option("--out", o.out, "write the certificate (or the JSON result) to this file");
  app.add_option("--oracle", o.oracle, "Dec(L) certificate used as line oracle, or 'reduce' for the built-in conic reduction");
  app.add_option("--seed-ab", o.seed_ab, "sigma seed a b for express and cubic lifts")->expected(2);

  std::string map1, curve = "conic", form, param;
  std::vector<std::string> args;
  // Vector positionals would read "[...]" as list syntax, so each argument
  // gets its own string slot.
  std::array<std::string, 8> slots;
  auto positionals = [&](CLI::App* c, int n) {
    for (int i = 0; i < n; ++i) c->add_option("arg" + std::to_string(i + 1), slots[i])->required(i == 0);
  };

  auto* compose_cmd = app.add_subcommand("compose", "compose maps left to right as m1 o m2 o ...");
  positionals(compose_cmd, 8);
  auto* invert_cmd = app.add_subcommand("invert", "inverse map");
  invert_cmd->add_option("map", map1)->required();
  auto* bp_cmd = app.add_subcommand("base-points", "rational proper base points with multiplicities");
  bp_cmd->add_option("map", map1)->required();
  auto* cl_cmd = app.add_subcommand("contracted-lines", "rational lines contracted by the map");
  cl_cmd->add_option("map", map1)->required();
  auto* classify_cmd = app.add_subcommand("classify", "classify a plane curve of degree <= 3 or x^d - y^(d-1) z");
  classify_cmd->add_option("form", form)->required();
  classify_cmd->add_option("--param", param, "parameterization [b0 : b1 : b2] in s, t");
  auto* dec_cmd = app.add_subcommand("check-dec", "does the map preserve the curve");
  auto* ine_cmd = app.add_subcommand("check-ine", "does the map fix the curve pointwise");
  auto* restrict_cmd = app.add_subcommand("restrict", "restriction to the curve as a map of parameters");
  for (auto* c : {dec_cmd, ine_cmd, restrict_cmd}) {
    c->add_option("--curve", curve, "curve literal or class name")->required();
    c->add_option("map", map1)->required();
  }
  auto* gen_cmd = app.add_subcommand("gen", "generators: sigma-ab a b | lambda-ab a b | mu-c c | tau-a d a | aut-xd d a | quad P Q R");
  positionals(gen_cmd, 4);
  auto* orbit_cmd = app.add_subcommand("orbit", "orbit of the base points of a quadratic map in Dec(C), given as a map or three points");
  positionals(orbit_cmd, 3);
  auto* express_cmd = app.add_subcommand("express", "write a quadratic map in Dec(C) in Aut(C) and sigma_{a,b}");
  express_cmd->add_option("map", map1)->required();
  auto* fconic_cmd = app.add_subcommand("factor-conic", "factor a map in Dec(C), C: xz = y^2");
  fconic_cmd->add_option("map", map1)->required();
  auto* fcubic_cmd = app.add_subcommand("factor-cubic", "factor a map in Dec(X) for the nodal or cuspidal model");
  fcubic_cmd->add_option("--curve", curve, "nodal or cuspidal")->required();
  fcubic_cmd->add_option("map", map1)->required();
  std::string to;
  std::string cert_path;
  auto* lift_cmd = app.add_subcommand("lift", "lift a certificate along the default maps L -> C -> X");
  lift_cmd->add_option("--to", to, "conic, nodal or cuspidal")->required();
  lift_cmd->add_option("certificate", cert_path)->required();
  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate");
  verify_cmd->add_option("certificate", cert_path)->required();
  auto* demo_cmd = app.add_subcommand("demo-cuspidal", "the cuspidal cubic example end to end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    Field F = Field::parse(o.field);
    auto M = [&](const std::string& s) { return parse_map(s, F); };
    for (auto& a : slots)
      if (!a.empty()) args.push_back(a);
    Report r;
    if (*compose_cmd) {
      std::vector<BirMap> ms;
      for (auto& s : args) ms.push_back(M(s));
      r = map_report(compose_all(ms, F));
    } else if (*invert_cmd) {
      r = map_report(invert(M(map1)));
    } else if (*bp_cmd) {
      BirMap m = M(map1);
      BasePoints bp = find_base_points(m);
      json a = json::array();
      std::string t;
      for (auto& p : bp.points) {
        int k = base_point_multiplicity(m, p);
        a.push_back(json{{"point", p.str()}, {"multiplicity", k}});
        t += p.str() + " multiplicity " + std::to_string(k) + "\n";
      }
      t += bp.complete ? "all base points rational" : "some base points are not rational";
      r = {json{{"base_points", a}, {"complete", bp.complete}}, t, kOk};
    } else if (*cl_cmd) {
      json a = json::array();
      std::string t;
      for (auto& [l, k] : contracted_lines(M(map1))) {
        a.push_back(json{{"line", l.str()}, {"multiplicity", k}});
        t += l.str() + " multiplicity " + std::to_string(k) + "\n";
      }
      if (!t.empty()) t.pop_back();
      r = {json{{"contracted_lines", a}}, t, kOk};
    } else if (*classify_cmd) {
      std::string lit = "curve form \"" + form + "\"";
      if (!param.empty()) lit += " param \"" + param + "\"";
      RationalCurve X = parse_curve(lit, F);
      json j{{"class", class_name(X.cls)}, {"curve", X.literal()}};
      if (X.cls == CurveClass::HigherCuspidal) j["d"] = X.xd;
      r = {j, std::string(class_name(X.cls)) + "\n" + X.literal(), kOk};
    } else if (*dec_cmd) {
      r = membership_report("in_dec", in_dec(M(map1), curve_arg(curve, F)));
    } else if (*ine_cmd) {
      r = membership_report("in_ine", in_ine(M(map1), curve_arg(curve, F)));
    } else if (*restrict_cmd) {
      RationalCurve X = curve_arg(curve, F);
      BirMap m = M(map1);
      MobiusMap mob = restrict_map(m, X, image_curve(m, X));
      r = {json{{"restriction", mob.str()}}, mob.str(), kOk};
    } else if (*gen_cmd) {
      const std::string& g = args[0];
      auto need = [&](std::size_t n) {
        if (args.size() != n + 1) fail(ErrorKind::SyntaxError, g + " takes " + std::to_string(n) + " arguments");
      };
      auto S = [&](std::size_t i) { return F.parse_scalar(args[i]); };
      auto D = [&](std::size_t i) {
        try {
          return std::stoi(args[i]);
        } catch (const std::exception&) {
          fail(ErrorKind::SyntaxError, "expected an integer, got " + args[i]);
        }
      };
      if (g == "sigma-ab") {
        need(2);
        r = map_report(sigma_ab(S(1), S(2)).map);
      } else if (g == "lambda-ab") {
        need(2);
        r = map_report(BirMap::from_transform(lambda_ab(S(1), S(2))));
      } else if (g == "mu-c") {
        need(1);
        r = map_report(BirMap::from_transform(mu_c(S(1))));
      } else if (g == "tau-a") {
        need(2);
        r = map_report(xd_tau(D(1), S(2)));
      } else if (g == "aut-xd") {
        need(2);
        r = map_report(BirMap::from_transform(xd_aut(D(1), S(2))));
      } else if (g == "quad") {
        need(3);
        r = map_report(quad_from_points(parse_point(args[1], F), parse_point(args[2], F), parse_point(args[3], F)).map);
      } else {
        fail(ErrorKind::SyntaxError, "unknown generator " + g);
      }
    } else if (*orbit_cmd) {
      ElementaryQuadratic q;
      if (args.size() == 3) q = quad_from_points(parse_point(args[0], F), parse_point(args[1], F), parse_point(args[2], F));
      else if (args.size() == 1) q = as_elementary_quadratic(M(args[0]));
      else fail(ErrorKind::SyntaxError, "orbit takes a map or three points");
      OrbitLabel lab = orbit_classify(q);
      json j{{"orbit", lab.str()}, {"tangent", lab.tangent()}};
      if (lab.kind == OrbitKind::Bd) j["d"] = lab.d.str();
      r = {j, lab.str(), kOk};
    } else if (*express_cmd) {
      auto [a, b] = seed_of(o, F);
      Expression e = express_quadratic_in_sigma(M(map1), a, b);
      json w = json::array();
      std::string t = "orbit " + e.label.str() + "\n";
      for (auto& s : e.word) {
        w.push_back(s.map.str());
        t += "  " + s.map.str() + "\n";
      }
      bool ok = word_product(e.word, F) == M(map1);
      t += std::string("recomposes: ") + (ok ? "yes" : "no");
      r = {json{{"orbit", e.label.str()}, {"seed", {a.str(), b.str()}}, {"word", w}, {"verified", ok}}, t, ok ? kOk : kMath};
    } else if (*fconic_cmd) {
      BirMap tau = M(map1);
      if (o.oracle == "reduce") r = factorization_report(reduce_dec_conic(tau));
      else r = factorization_report(factor_dec_conic(tau, line_oracle_from(o, F)));
    } else if (*fcubic_cmd) {
      RationalCurve X = curve_arg(curve, F);
      WordOracle co = o.oracle.empty() || o.oracle == "reduce" ? conic_oracle_by_reduction() : conic_oracle_from_line(line_oracle_from(o, F));
      r = factorization_report(factor_dec_cubic(M(map1), X, co, std::nullopt, std::nullopt, seed_of(o, F)));
    } else if (*lift_cmd) {
      Factorization src = parse_certificate(read_json(cert_path));
      const Field& G = src.curve.field();
      auto [a, b] = seed_of(o, G);
      if (src.curve.cls == CurveClass::Line) {
        PhiElement phi = default_phi_line_conic(G);
        src = lift_factorization(compose(compose(phi.map, src.target), invert(phi.map)), src, phi, phi);
      }
      if (to != "conic") {
        CurveClass cls = to == "nodal" ? CurveClass::NodalCubic : to == "cuspidal" ? CurveClass::CuspidalCubic : CurveClass::Other;
        if (cls == CurveClass::Other) fail(ErrorKind::SyntaxError, "--to must be conic, nodal or cuspidal");
        if (src.curve.cls != CurveClass::Conic) fail(ErrorKind::Precondition, "source certificate must be over the line or the conic");
        PhiElement g = default_phi_conic_cubic(cls, G);
        src = lift_factorization(compose(compose(g.map, src.target), invert(g.map)), src, g, g, std::pair{a, b});
      } else if (src.curve.cls != CurveClass::Conic) {
        fail(ErrorKind::Precondition, "lifting to the conic needs a certificate over the line");
      }
      r = factorization_report(src);
    } else if (*verify_cmd) {
      VerifyReport v = verify_certificate(read_json(cert_path));
      r = {json{{"ok", v.ok}, {"detail", v.detail}}, v.ok ? "verified" : "FAILED: " + v.detail, v.ok ? kOk : kMath};
    } else if (*demo_cmd) {
      r = demo_cuspidal(o);
    }

    if (!o.out.empty()) {
      std::ofstream out(o.out);
      if (!out) fail(ErrorKind::SyntaxError, "cannot write " + o.out);
      out << (r.certificate.is_null() ? r.value : r.certificate).dump(2) << "\n";
    }
    std::cout << (o.json ? r.value.dump(2) : r.text) << "\n";
    return r.code;
  } catch (const Error& e) {
    int rc = exit_code_for(e.kind());
    if (o.json) std::cout << json{{"error", kind_name(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return rc;
  }
}
