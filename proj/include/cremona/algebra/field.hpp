#pragma once

#include <optional>

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>

#include "cremona/error.hpp"

namespace cremona {

class Scalar;

// Either the rationals (modulus 0) or a prime field F_p with p > 3.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime(std::uint64_t p) {
    if (p <= 3) fail(ErrorKind::BadField, "prime field modulus must exceed 3, got " + std::to_string(p));
    if (p >= (std::uint64_t(1) << 62)) fail(ErrorKind::BadField, "prime field modulus too large");
    mpz_class z(std::to_string(p));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
      fail(ErrorKind::BadField, std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
  }

  // "q", "Q" or "fp:<p>".
  static Field parse(const std::string& text) {
    if (text == "q" || text == "Q" || text == "rationals") return rationals();
    if (text.rfind("fp:", 0) == 0 || text.rfind("FP:", 0) == 0) {
      std::string digits = text.substr(3);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        fail(ErrorKind::BadField, "bad prime in field spec '" + text + "'");
      return prime(std::stoull(digits));
    }
    fail(ErrorKind::BadField, "unknown field spec '" + text + "'");
  }

  bool is_rational() const { return p_ == 0; }
  std::uint64_t modulus() const { return p_; }
  std::string name() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

  Scalar zero() const;
  Scalar one() const;
  Scalar of(long long n) const;
  Scalar frac(long long num, long long den) const;
  Scalar from_mpq(const mpq_class& q) const;
  Scalar from_mpz(const mpz_class& z) const;
  Scalar parse_scalar(const std::string& text) const;

  // 0, 1, -1, 2, -2, ... ; the fixed enumeration used for deterministic choices.
  Scalar enumerate(std::uint64_t k) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  std::uint64_t p_ = 0;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace detail

class Scalar {
 public:
  Scalar() = default;

  const Field& field() const { return field_; }
  bool is_rational() const { return field_.is_rational(); }

  bool is_zero() const { return is_rational() ? sgn(qv()) == 0 : r_ == 0; }
  bool is_one() const { return is_rational() ? qv() == 1 : r_ == 1; }

  const mpq_class& rational() const { return qv(); }
  std::uint64_t residue() const { return r_; }

  Scalar operator-() const {
    Scalar s = *this;
    if (is_rational())
      s.qm() = -qv();
    else
      s.r_ = r_ == 0 ? 0 : field_.modulus() - r_;
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (is_rational()) {
      qm() += o.qv();
    } else {
      std::uint64_t p = field_.modulus();
      r_ = r_ + o.r_;
      if (r_ >= p) r_ -= p;
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    if (is_rational()) {
      qm() -= o.qv();
    } else {
      std::uint64_t p = field_.modulus();
      r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p - o.r_;
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (is_rational())
      qm() *= o.qv();
    else
      r_ = detail::mulmod(r_, o.r_, field_.modulus());
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inv() const {
    if (is_zero()) fail(ErrorKind::Precondition, "division by zero");
    Scalar s = *this;
    if (is_rational())
      s.qm() = 1 / qv();
    else
      s.r_ = detail::powmod(r_, field_.modulus() - 2, field_.modulus());
    return s;
  }

  Scalar pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar base = *this, r = field_.one();
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    return a.is_rational() ? a.qv() == b.qv() : a.r_ == b.r_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order used only for deterministic tie-breaking: numeric order on Q,
  // residue order on F_p.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    a.check(b);
    return a.is_rational() ? a.qv() < b.qv() : a.r_ < b.r_;
  }

  std::string str() const { return is_rational() ? qv().get_str() : std::to_string(r_); }

  // For F_p elements, the representative in (-p/2, p/2]; the value itself on Q.
  mpq_class lift() const {
    if (is_rational()) return qv();
    std::uint64_t p = field_.modulus();
    if (r_ > p / 2) return -mpq_class(mpz_class(std::to_string(p - r_)));
    return mpq_class(mpz_class(std::to_string(r_)));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  friend class Field;

  void check(const Scalar& o) const {
    if (field_ != o.field_)
      fail(ErrorKind::FieldMismatch, "operands over " + field_.name() + " and " + o.field_.name());
  }

  Field field_;
  // Engaged only for rationals, so prime-field scalars never allocate.
  std::optional<mpq_class> q_;
  const mpq_class& qv() const {
    static const mpq_class zero;
    return q_ ? *q_ : zero;
  }
  mpq_class& qm() {
    if (!q_) q_.emplace();
    return *q_;
  }
  std::uint64_t r_ = 0;
};

inline Scalar Field::enumerate(std::uint64_t k) const {
  long long v = static_cast<long long>((k + 1) / 2);
  return of(k % 2 == 1 ? v : -v);
}

inline Scalar Field::zero() const { return of(0); }
inline Scalar Field::one() const { return of(1); }

inline Scalar Field::of(long long n) const {
  Scalar s;
  s.field_ = *this;
  if (p_ == 0) {
    s.q_ = mpq_class(mpz_class(static_cast<long>(n)));
  } else {
    long long m = n % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    s.r_ = static_cast<std::uint64_t>(m);
  }
  return s;
}

inline Scalar Field::from_mpz(const mpz_class& z) const {
  Scalar s;
  s.field_ = *this;
  if (p_ == 0)
    s.q_ = mpq_class(z);
  else
    s.r_ = detail::reduce_mpz(z, p_);
  return s;
}

// q must be canonical (positive denominator, lowest terms).
inline Scalar Field::from_mpq(const mpq_class& q) const {
  if (p_ == 0) {
    Scalar s;
    s.field_ = *this;
    s.q_ = q;
    return s;
  }
  Scalar den = from_mpz(q.get_den());
  if (den.is_zero())
    fail(ErrorKind::BadField, "denominator " + q.get_den().get_str() + " vanishes mod " + std::to_string(p_));
  return from_mpz(q.get_num()) / den;
}

inline Scalar Field::frac(long long num, long long den) const {
  if (den == 0) fail(ErrorKind::Precondition, "zero denominator");
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return from_mpq(q);
}

// Accepts "-12", "3/4", "-3/4".
inline Scalar Field::parse_scalar(const std::string& text) const {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) neg = t[i++] == '-';
  std::size_t slash = t.find('/', i);
  std::string num = t.substr(i, slash == std::string::npos ? std::string::npos : slash - i);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  auto digits = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  if (!digits(num) || !digits(den)) fail(ErrorKind::SyntaxError, "bad scalar literal '" + text + "'");
  mpz_class n(num), d(den);
  if (d == 0) fail(ErrorKind::BadField, "zero denominator in '" + text + "'");
  mpq_class q(n, d);
  q.canonicalize();
  if (neg) q = -q;
  return from_mpq(q);
}

// Square root with the canonical choice: the non-negative root over Q, the
// smaller residue over F_p.
inline Scalar sqrt_scalar(const Scalar& a) {
  const Field& F = a.field();
  if (a.is_zero()) return a;
  if (F.is_rational()) {
    const mpq_class& q = a.rational();
    if (sgn(q) < 0) fail(ErrorKind::NotASquare, q.get_str() + " is negative");
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
      fail(ErrorKind::NotASquare, q.get_str() + " is not a rational square");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return F.from_mpq(mpq_class(rn, rd));
  }
  std::uint64_t p = F.modulus(), v = a.residue();
  if (p < 10000) {
    for (std::uint64_t r = 1; r <= p / 2; ++r)
      if (detail::mulmod(r, r, p) == v) return F.of(static_cast<long long>(r));
    fail(ErrorKind::NotASquare, a.str() + " is not a square mod " + std::to_string(p));
  }
  using detail::mulmod;
  using detail::powmod;
  if (powmod(v, (p - 1) / 2, p) != 1) fail(ErrorKind::NotASquare, a.str() + " is not a square mod " + std::to_string(p));
  // Tonelli-Shanks.
  std::uint64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(v, q, p), r = powmod(v, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  if (p - r < r) r = p - r;
  return F.of(static_cast<long long>(r));
}

inline bool is_square(const Scalar& a) {
  try {
    sqrt_scalar(a);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotASquare) return false;
    throw;
  }
}

}  // namespace cremona
