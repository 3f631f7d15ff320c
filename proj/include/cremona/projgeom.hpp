#pragma once

#include <array>
#include <string>
#include <vector>

#include "cremona/algebra.hpp"

namespace cremona {

using Vec3 = std::array<Scalar, 3>;

namespace detail {

inline Vec3 normalize3(const Vec3& v, const char* what) {
  for (int i = 0; i < 3; ++i)
    if (!v[i].is_zero()) {
      Scalar inv = v[i].inv();
      return {v[0] * inv, v[1] * inv, v[2] * inv};
    }
  fail(ErrorKind::Precondition, std::string("all-zero coordinates for a ") + what);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Scalar dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline bool is_zero3(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

inline std::string str3(const Vec3& v, char open, char close) {
  return std::string(1, open) + v[0].str() + " : " + v[1].str() + " : " + v[2].str() + std::string(1, close);
}

inline bool less3(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace detail

// A point of P^2 with first nonzero coordinate 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(const Vec3& v) : c_(detail::normalize3(v, "point")) {}
  ProjPoint(const Scalar& a, const Scalar& b, const Scalar& c) : ProjPoint(Vec3{a, b, c}) {}
  static ProjPoint of(const Field& F, long long a, long long b, long long c) { return ProjPoint(F.of(a), F.of(b), F.of(c)); }

  const Vec3& coords() const { return c_; }
  const Scalar& operator[](int i) const { return c_[i]; }
  const Field& field() const { return c_[0].field(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return detail::less3(a.c_, b.c_); }
  std::string str() const { return detail::str3(c_, '(', ')'); }

 private:
  Vec3 c_;
};

// The line a x + b y + c z = 0, canonical dual coordinates.
class ProjLine {
 public:
  ProjLine() = default;
  explicit ProjLine(const Vec3& v) : c_(detail::normalize3(v, "line")) {}
  ProjLine(const Scalar& a, const Scalar& b, const Scalar& c) : ProjLine(Vec3{a, b, c}) {}

  static ProjLine from_form(const Poly& l) {
    if (l.total_degree() != 1 || !l.is_homogeneous()) fail(ErrorKind::Precondition, "not a linear form: " + l.str());
    return ProjLine(l.coeff({1, 0, 0}), l.coeff({0, 1, 0}), l.coeff({0, 0, 1}));
  }

  const Vec3& coords() const { return c_; }
  const Scalar& operator[](int i) const { return c_[i]; }
  const Field& field() const { return c_[0].field(); }
  bool contains(const ProjPoint& p) const { return detail::dot(c_, p.coords()).is_zero(); }

  Poly form() const {
    const Field& F = field();
    return Poly::constant(c_[0]) * Poly::x(F) + Poly::constant(c_[1]) * Poly::y(F) + Poly::constant(c_[2]) * Poly::z(F);
  }

  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjLine& a, const ProjLine& b) { return !(a == b); }
  friend bool operator<(const ProjLine& a, const ProjLine& b) { return detail::less3(a.c_, b.c_); }
  std::string str() const { return detail::str3(c_, '{', '}'); }

 private:
  Vec3 c_;
};

inline ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  Vec3 c = detail::cross(p.coords(), q.coords());
  if (detail::is_zero3(c)) fail(ErrorKind::EqualPoints, "line through " + p.str() + " twice");
  return ProjLine(c);
}

inline ProjPoint meet(const ProjLine& a, const ProjLine& b) {
  Vec3 c = detail::cross(a.coords(), b.coords());
  if (detail::is_zero3(c)) fail(ErrorKind::EqualLines, "meet of " + a.str() + " with itself");
  return ProjPoint(c);
}

inline Scalar det3(const Vec3& a, const Vec3& b, const Vec3& c) { return detail::dot(a, detail::cross(b, c)); }

inline bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  return det3(p.coords(), q.coords(), r.coords()).is_zero();
}

inline bool general_position(const std::vector<ProjPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) return false;
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (collinear(pts[i], pts[j], pts[k])) return false;
    }
  return true;
}

// An element of PGL_3 acting on column vectors, canonically scaled so that its
// first nonzero entry (row-major) is 1.
class ProjTransform {
 public:
  ProjTransform() = default;
  explicit ProjTransform(const Mat& m) : m_(m) {
    if (m.rows() != 3 || m.cols() != 3) fail(ErrorKind::Precondition, "transform needs a 3x3 matrix");
    if (m.det().is_zero()) fail(ErrorKind::Singular, "singular transform");
    Scalar lead = m.field().zero();
    for (int i = 0; i < 9 && lead.is_zero(); ++i) lead = m(i / 3, i % 3);
    m_ = lead.inv() * m;
  }

  static ProjTransform identity(const Field& F) { return ProjTransform(Mat::identity(F, 3)); }
  static ProjTransform diag(const Scalar& a, const Scalar& b, const Scalar& c) {
    Mat m(a.field(), 3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return ProjTransform(m);
  }
  static ProjTransform from_rows(const Field& F, const std::array<std::array<long long, 3>, 3>& rows) {
    Mat m(F, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = F.of(rows[i][j]);
    return ProjTransform(m);
  }
  // Columns are the images of the coordinate points.
  static ProjTransform from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat m(a[0].field(), 3, 3);
    for (int i = 0; i < 3; ++i) {
      m(i, 0) = a[i];
      m(i, 1) = b[i];
      m(i, 2) = c[i];
    }
    return ProjTransform(m);
  }

  const Mat& matrix() const { return m_; }
  const Field& field() const { return m_.field(); }

  ProjPoint apply(const ProjPoint& p) const {
    auto v = m_.apply({p[0], p[1], p[2]});
    return ProjPoint(v[0], v[1], v[2]);
  }
  // Lines transform by the inverse transpose.
  ProjLine apply_line(const ProjLine& l) const {
    Mat it = m_.inverse()->transpose();
    auto v = it.apply({l[0], l[1], l[2]});
    return ProjLine(v[0], v[1], v[2]);
  }
  ProjTransform inverse() const { return ProjTransform(*m_.inverse()); }

  // (a * b)(p) = a(b(p)).
  friend ProjTransform operator*(const ProjTransform& a, const ProjTransform& b) { return ProjTransform(a.m_ * b.m_); }
  friend bool operator==(const ProjTransform& a, const ProjTransform& b) { return a.m_ == b.m_; }
  friend bool operator!=(const ProjTransform& a, const ProjTransform& b) { return !(a == b); }

  bool is_identity() const { return m_ == Mat::identity(field(), 3); }

  // The three linear forms (row_i . (x, y, z)).
  std::array<Poly, 3> forms() const {
    const Field& F = field();
    std::array<Poly, 3> out{Poly(F), Poly(F), Poly(F)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i] += Poly::constant(m_(i, j)) * Poly::var(F, j);
    return out;
  }

  std::string str() const {
    auto f = forms();
    return "[" + f[0].str() + " : " + f[1].str() + " : " + f[2].str() + "]";
  }

 private:
  Mat m_;
};

namespace detail {

// Matrix whose columns are scaled representatives of p0, p1, p2 summing to p3.
inline Mat frame_matrix(const std::array<ProjPoint, 4>& f) {
  const Field& F = f[0].field();
  Mat a(F, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = f[j][i];
  auto lam = a.solve({f[3][0], f[3][1], f[3][2]});
  Mat m(F, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a(i, j) * (*lam)[j];
  return m;
}

}  // namespace detail

// The unique transform sending src[i] to dst[i].
inline ProjTransform transform_from_frames(const std::array<ProjPoint, 4>& src, const std::array<ProjPoint, 4>& dst) {
  for (const auto* fr : {&src, &dst})
    if (!general_position({(*fr)[0], (*fr)[1], (*fr)[2], (*fr)[3]}))
      fail(ErrorKind::DegenerateFrame, "frame has three collinear points");
  Mat a = detail::frame_matrix(src), b = detail::frame_matrix(dst);
  return ProjTransform(b * *a.inverse());
}

inline ProjPoint parse_point(const std::string& text, const Field& F) {
  auto parts = split_literal(text, '(', ')');
  if (parts.size() != 3) fail(ErrorKind::SyntaxError, "point literal needs three coordinates: " + text);
  return ProjPoint(F.parse_scalar(parts[0]), F.parse_scalar(parts[1]), F.parse_scalar(parts[2]));
}

inline ProjLine parse_line(const std::string& text, const Field& F) {
  auto parts = split_literal(text, '{', '}');
  if (parts.size() != 3) fail(ErrorKind::SyntaxError, "line literal needs three coordinates: " + text);
  return ProjLine(F.parse_scalar(parts[0]), F.parse_scalar(parts[1]), F.parse_scalar(parts[2]));
}

}  // namespace cremona
