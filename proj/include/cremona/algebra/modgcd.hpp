#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cremona/algebra/mpoly.hpp"

// Bivariate gcd by evaluation and interpolation over F_p, and by several
// primes plus rational reconstruction over Q. Both verify by trial division;
// callers fall back to the remainder sequence when nothing is returned.

namespace cremona::detail::modgcd {

using u64 = std::uint64_t;
using U = std::vector<u64>;  // dense, ascending powers
using B = std::vector<U>;    // index = power of x, coefficients in y

inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
inline u64 add(u64 a, u64 b, u64 p) { return a + b >= p ? a + b - p : a + b; }
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 power(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mul(a, a, p))
    if (e & 1) r = mul(r, a, p);
  return r;
}
inline u64 inv(u64 a, u64 p) { return power(a, p - 2, p); }

inline void trim(U& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline void trim(B& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}
inline int deg(const U& a) { return static_cast<int>(a.size()) - 1; }

inline u64 eval(const U& a, u64 y, u64 p) {
  u64 r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = add(mul(r, y, p), *it, p);
  return r;
}

inline U scale(U a, u64 s, u64 p) {
  for (auto& c : a) c = mul(c, s, p);
  trim(a);
  return a;
}

inline U monic(const U& a, u64 p) { return a.empty() ? a : scale(a, inv(a.back(), p), p); }

inline U multiply(const U& a, const U& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  U r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
  trim(r);
  return r;
}

// Quotient and remainder of a by b != 0.
inline std::pair<U, U> divmod(U a, const U& b, u64 p) {
  U q;
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, 0);
  u64 li = inv(b.back(), p);
  while (!a.empty() && deg(a) >= deg(b)) {
    int k = deg(a) - deg(b);
    u64 c = mul(a.back(), li, p);
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + k] = sub(a[i + k], mul(c, b[i], p), p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline U gcd(U a, U b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    U r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline int deg_y(const B& a) {
  int d = -1;
  for (auto& c : a) d = std::max(d, deg(c));
  return d;
}

inline U content(const B& a, u64 p) {
  U g;
  for (auto& c : a) g = gcd(g, c, p);
  return g;
}

inline B divide_content(const B& a, const U& c, u64 p) {
  B out;
  for (auto& x : a) out.push_back(divmod(x, c, p).first);
  trim(out);
  return out;
}

// Values at ys -> interpolating polynomial (Lagrange, Newton form).
inline U interpolate(const std::vector<u64>& ys, const std::vector<u64>& vs, u64 p) {
  std::size_t n = ys.size();
  std::vector<u64> c(vs);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      c[i] = mul(sub(c[i], c[i - 1], p), inv(sub(ys[i], ys[i - j], p), p), p);
      if (i == j) break;
    }
  U r{c[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    // r = r * (y - ys[k]) + c[k]
    U t(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      t[i + 1] = add(t[i + 1], r[i], p);
      t[i] = sub(t[i], mul(r[i], ys[k], p), p);
    }
    t[0] = add(t[0], c[k], p);
    r = std::move(t);
  }
  trim(r);
  return r;
}

// Exact division of bivariate a by b in F_p[y][x]; nullopt if b does not divide a.
inline std::optional<B> exact_quotient(B a, const B& b, u64 p) {
  trim(a);
  if (b.empty()) return std::nullopt;
  if (a.empty()) return B{};
  int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) return std::nullopt;
  B q(a.size() - b.size() + 1);
  while (!a.empty()) {
    int k = static_cast<int>(a.size()) - 1 - db;
    if (k < 0) return std::nullopt;
    auto [c, r] = divmod(a.back(), b.back(), p);
    if (!r.empty()) return std::nullopt;
    q[k] = c;
    for (int i = 0; i <= db; ++i) {
      U t = multiply(c, b[i], p);
      U& dst = a[i + k];
      if (dst.size() < t.size()) dst.resize(t.size(), 0);
      for (std::size_t j = 0; j < t.size(); ++j) dst[j] = sub(dst[j], t[j], p);
      trim(dst);
    }
    if (!a.back().empty()) return std::nullopt;
    trim(a);
  }
  trim(q);
  return q;
}

// gcd of a, b in F_p[x, y], up to a scalar; nullopt when p is too small for
// enough evaluation points.
inline std::optional<B> gcd_bivariate(B a, B b, u64 p) {
  trim(a);
  trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  U ca = content(a, p), cb = content(b, p), c = gcd(ca, cb, p);
  a = divide_content(a, ca, p);
  b = divide_content(b, cb, p);
  if (a.size() == 1 || b.size() == 1) return B{c};
  U lc = gcd(a.back(), b.back(), p);
  int bound = std::min(deg_y(a), deg_y(b)) + deg(lc);
  std::vector<u64> ys;
  std::vector<U> imgs;
  int best = -1;
  for (u64 y0 = 0; y0 < p; ++y0) {
    if (eval(a.back(), y0, p) == 0 || eval(b.back(), y0, p) == 0) continue;
    U ua, ub;
    for (auto& x : a) ua.push_back(eval(x, y0, p));
    for (auto& x : b) ub.push_back(eval(x, y0, p));
    U h = gcd(ua, ub, p);
    if (deg(h) == 0) return B{c};
    if (best >= 0 && deg(h) > best) continue;
    if (deg(h) < best) {
      ys.clear();
      imgs.clear();
    }
    best = deg(h);
    ys.push_back(y0);
    imgs.push_back(scale(h, eval(lc, y0, p), p));
    if (static_cast<int>(ys.size()) < bound + 1) continue;
    B cand(best + 1);
    for (int j = 0; j <= best; ++j) {
      std::vector<u64> vs;
      for (auto& im : imgs) vs.push_back(j < static_cast<int>(im.size()) ? im[j] : 0);
      cand[j] = interpolate(ys, vs, p);
    }
    trim(cand);
    cand = divide_content(cand, content(cand, p), p);
    if (exact_quotient(a, cand, p) && exact_quotient(b, cand, p)) {
      for (auto& x : cand) x = multiply(x, c, p);
      trim(cand);
      return cand;
    }
  }
  return std::nullopt;
}

inline B to_b(const Poly& f, u64 p, const std::function<u64(const Scalar&)>& red) {
  B out;
  f.for_each([&](const Exps& e, const Scalar& c) {
    if (static_cast<int>(out.size()) <= e[0]) out.resize(e[0] + 1);
    U& u = out[e[0]];
    if (static_cast<int>(u.size()) <= e[1]) u.resize(e[1] + 1, 0);
    u[e[1]] = add(u[e[1]], red(c), p);
  });
  for (auto& u : out) trim(u);
  trim(out);
  return out;
}

// Leading monomial in lex order x > y, as (x power, y power).
inline std::pair<int, int> lead(const B& a) { return {static_cast<int>(a.size()) - 1, deg(a.back())}; }

inline std::pair<int, int> lex_lead(const Poly& f) {
  std::pair<int, int> best{-1, -1};
  f.for_each([&](const Exps& e, const Scalar&) { best = std::max(best, std::pair<int, int>{e[0], e[1]}); });
  return best;
}

inline Poly from_b(const B& a, const std::function<Scalar(std::size_t, std::size_t)>& coeff, const Field& F) {
  Poly r(F);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) r.add_term(pack({static_cast<int>(i), static_cast<int>(j), 0}), coeff(i, j));
  return r;
}

inline std::optional<Poly> gcd_prime_field(const Poly& f, const Poly& g) {
  const Field& F = f.field();
  u64 p = F.modulus();
  auto red = [](const Scalar& s) { return s.residue(); };
  auto h = gcd_bivariate(to_b(f, p, red), to_b(g, p, red), p);
  if (!h) return std::nullopt;
  const B& hb = *h;
  return from_b(hb, [&](std::size_t i, std::size_t j) { return F.of(static_cast<long long>(hb[i][j])); }, F);
}

// r/s with |r|, s <= sqrt(m/2) and r = a s mod m.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
  mpz_class bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1, t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpz_class g = gcd(r1, s1);
  if (g != 1) return std::nullopt;
  mpq_class out(r1, s1);
  out.canonicalize();
  return out;
}

inline std::optional<Poly> gcd_rationals(const Poly& f, const Poly& g) {
  const Field& F = f.field();
  auto lf = lex_lead(f), lg = lex_lead(g);
  mpz_class prime = mpz_class(1) << 60;
  std::optional<std::pair<int, int>> best;
  std::map<std::pair<int, int>, mpz_class> acc;
  mpz_class modulus = 1;
  std::optional<Poly> last;
  for (int k = 0; k < 60; ++k) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    u64 p = prime.get_ui();
    bool bad = false;
    auto red = [&](const Scalar& s) -> u64 {
      const mpq_class& q = s.rational();
      mpz_class n = q.get_num() % prime, d = q.get_den() % prime;
      if (n < 0) n += prime;
      if (d == 0) {
        bad = true;
        return 0;
      }
      return mul(n.get_ui(), inv(d.get_ui(), p), p);
    };
    B a = to_b(f, p, red), b = to_b(g, p, red);
    if (bad || a.empty() || b.empty() || lead(a) != lf || lead(b) != lg) continue;
    auto h = gcd_bivariate(a, b, p);
    if (!h) continue;
    if (h->size() == 1 && h->front().size() == 1) return Poly::constant(F.one());
    B hb = *h;
    u64 li = inv(hb.back().back(), p);
    for (auto& x : hb) x = scale(x, li, p);
    auto L = lead(hb);
    if (best && L > *best) continue;
    if (!best || L < *best) {
      best = L;
      acc.clear();
      modulus = 1;
      last.reset();
    }
    // Chinese remaindering, coefficient by coefficient.
    std::map<std::pair<int, int>, u64> img;
    for (std::size_t i = 0; i < hb.size(); ++i)
      for (std::size_t j = 0; j < hb[i].size(); ++j)
        if (hb[i][j]) img[{static_cast<int>(i), static_cast<int>(j)}] = hb[i][j];
    for (auto& [key, v] : img) acc.try_emplace(key, 0);
    u64 minv = inv(mpz_class(modulus % prime).get_ui(), p);
    for (auto& [key, v] : acc) {
      u64 target = img.count(key) ? img[key] : 0;
      u64 cur = mpz_class(v % prime).get_ui();
      u64 t = mul(sub(target, cur, p), minv, p);
      v += modulus * t;
    }
    modulus *= prime;
    Poly cand(F);
    bool ok = true;
    for (auto& [key, v] : acc) {
      auto q = rational_reconstruct(v, modulus);
      if (!q) {
        ok = false;
        break;
      }
      if (*q != 0) cand.add_term(pack({key.first, key.second, 0}), F.from_mpq(*q));
    }
    if (!ok) continue;
    // Trial division only once the reconstruction has stabilized.
    if (last && *last == cand) {
      try {
        exact_div(f, cand);
        exact_div(g, cand);
        return cand;
      } catch (const Error&) {
        last.reset();
        continue;
      }
    }
    last = cand;
  }
  return std::nullopt;
}

}  // namespace cremona::detail::modgcd
