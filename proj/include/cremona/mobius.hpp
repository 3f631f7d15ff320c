#pragma once

#include <array>
#include <string>

#include "cremona/algebra.hpp"

namespace cremona {

// An element of PGL_2 acting on (s : t) by (a s + b t : c s + d t), scaled so
// that its first nonzero entry is 1.
class MobiusMap {
 public:
  MobiusMap() = default;
  MobiusMap(Scalar a, Scalar b, Scalar c, Scalar d) : m_{a, b, c, d} {
    if ((a * d - b * c).is_zero()) fail(ErrorKind::Singular, "singular Mobius map");
    Scalar lead = a;
    for (auto& x : m_)
      if (!x.is_zero()) {
        lead = x;
        break;
      }
    Scalar inv = lead.inv();
    for (auto& x : m_) x *= inv;
  }
  static MobiusMap identity(const Field& F) { return MobiusMap(F.one(), F.zero(), F.zero(), F.one()); }

  const Scalar& a() const { return m_[0]; }
  const Scalar& b() const { return m_[1]; }
  const Scalar& c() const { return m_[2]; }
  const Scalar& d() const { return m_[3]; }
  const Field& field() const { return m_[0].field(); }

  ParamPoint apply(const ParamPoint& p) const { return ParamPoint::make(a() * p.s + b() * p.t, c() * p.s + d() * p.t); }

  // (x * y)(p) = x(y(p)).
  friend MobiusMap operator*(const MobiusMap& x, const MobiusMap& y) {
    return MobiusMap(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(), x.c() * y.a() + x.d() * y.c(),
                     x.c() * y.b() + x.d() * y.d());
  }
  MobiusMap inverse() const { return MobiusMap(d(), -b(), -c(), a()); }

  friend bool operator==(const MobiusMap& x, const MobiusMap& y) { return x.m_ == y.m_; }
  friend bool operator!=(const MobiusMap& x, const MobiusMap& y) { return !(x == y); }
  bool is_identity() const { return *this == identity(field()); }

  // f(a s + b t, c s + d t).
  BinaryForm pullback(const BinaryForm& f) const {
    const Field& F = f.field();
    BinaryForm u(F, {a(), b()}), v(F, {c(), d()});
    int n = f.degree();
    BinaryForm acc = BinaryForm::zero(F, n);
    for (int i = 0; i <= n; ++i) {
      if (f.coeff(i).is_zero()) continue;
      acc = acc + f.coeff(i) * (u.pow(n - i) * v.pow(i));
    }
    return acc;
  }

  std::string str() const {
    return "((" + a().str() + ", " + b().str() + "), (" + c().str() + ", " + d().str() + "))";
  }

  // The unique map sending u[i] to v[i] for three distinct points each.
  static MobiusMap from_three_points(const std::array<ParamPoint, 3>& u, const std::array<ParamPoint, 3>& v) {
    auto frame = [](const std::array<ParamPoint, 3>& p) {
      // Columns l1 * p0, l2 * p1 with l1 p0 + l2 p1 = p2.
      Scalar det = p[0].s * p[1].t - p[1].s * p[0].t;
      if (det.is_zero()) fail(ErrorKind::Precondition, "repeated points in Mobius interpolation");
      Scalar l1 = (p[2].s * p[1].t - p[1].s * p[2].t) / det;
      Scalar l2 = (p[0].s * p[2].t - p[2].s * p[0].t) / det;
      if (l1.is_zero() || l2.is_zero()) fail(ErrorKind::Precondition, "repeated points in Mobius interpolation");
      return MobiusMap(l1 * p[0].s, l2 * p[1].s, l1 * p[0].t, l2 * p[1].t);
    };
    return frame(v) * frame(u).inverse();
  }

 private:
  std::array<Scalar, 4> m_;
};

}  // namespace cremona
