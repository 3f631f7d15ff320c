#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cremona/algebra/field.hpp"

namespace cremona {

// Small dense matrix over a field.
class Mat {
 public:
  Mat() = default;
  Mat(Field F, int rows, int cols) : F_(F), r_(rows), c_(cols), a_(rows * cols, F.zero()) {}

  static Mat identity(Field F, int n) {
    Mat m(F, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F.one();
    return m;
  }

  const Field& field() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  Scalar& operator()(int i, int j) { return a_[i * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[i * c_ + j]; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) fail(ErrorKind::DegreeMismatch, "matrix shapes do not compose");
    Mat m(a.F_, a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }
  friend Mat operator*(const Scalar& s, Mat a) {
    for (auto& x : a.a_) x *= s;
    return a;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    std::vector<Scalar> out(r_, F_.zero());
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Mat transpose() const {
    Mat m(F_, c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  // Row-reduced echelon form in place; returns the pivot columns.
  std::vector<int> rref() {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
      int p = -1;
      for (int i = row; i < r_; ++i)
        if (!(*this)(i, col).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != row)
        for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      Scalar inv = (*this)(row, col).inv();
      for (int j = 0; j < c_; ++j) (*this)(row, j) *= inv;
      for (int i = 0; i < r_; ++i) {
        if (i == row || (*this)(i, col).is_zero()) continue;
        Scalar f = (*this)(i, col);
        for (int j = 0; j < c_; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  int rank() const {
    Mat m = *this;
    return static_cast<int>(m.rref().size());
  }

  // Basis of the right kernel.
  std::vector<std::vector<Scalar>> kernel() const {
    Mat m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < c_; ++f) {
      if (is_piv[f]) continue;
      std::vector<Scalar> v(c_, F_.zero());
      v[f] = F_.one();
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(static_cast<int>(i), f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Scalar det() const {
    if (r_ != c_) fail(ErrorKind::Precondition, "determinant of a non-square matrix");
    Mat m = *this;
    Scalar d = F_.one();
    for (int col = 0; col < c_; ++col) {
      int p = -1;
      for (int i = col; i < r_; ++i)
        if (!m(i, col).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return F_.zero();
      if (p != col) {
        for (int j = 0; j < c_; ++j) std::swap(m(p, j), m(col, j));
        d = -d;
      }
      d *= m(col, col);
      Scalar inv = m(col, col).inv();
      for (int i = col + 1; i < r_; ++i) {
        if (m(i, col).is_zero()) continue;
        Scalar f = m(i, col) * inv;
        for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
      }
    }
    return d;
  }

  std::optional<Mat> inverse() const {
    if (r_ != c_) return std::nullopt;
    Mat aug(F_, r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = F_.one();
    }
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) < r_ || piv[r_ - 1] >= c_) return std::nullopt;
    Mat inv(F_, r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

  // Some solution of A v = b, if one exists.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const {
    Mat aug(F_, r_, c_ + 1);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == c_) return std::nullopt;
    std::vector<Scalar> v(c_, F_.zero());
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = aug(static_cast<int>(i), c_);
    return v;
  }

 private:
  Field F_;
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

}  // namespace cremona
