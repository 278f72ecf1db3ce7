#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "wreslab/errors.hpp"
#include "wreslab/scalar.hpp"

namespace wreslab {

/// Dense row-major matrix over a scalar field. Small sizes only (k <= a few dozen).
template <class S>
class Matrix {
 public:
  using F = Field<S>;

  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, S(0)) {}

  static Matrix zero(int k) { return Matrix(k, k); }
  static Matrix identity(int k) {
    Matrix m(k, k);
    for (int i = 0; i < k; ++i) m(i, i) = S(1);
    return m;
  }
  /// E_{ij}: one in row i, column j.
  static Matrix unit(int k, int i, int j) {
    Matrix m(k, k);
    m(i, j) = S(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw StructuralError("Matrix::from_rows: ragged rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  S& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& s) { return F::is_zero(s); });
  }
  bool near_zero(double tol = F::tolerance) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const S& s) { return F::near_zero(s, tol); });
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& s : data_) m = std::max(m, F::abs(s));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("Matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const S& ail = a(i, l);
        if (F::is_zero(ail)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  /// c += a * b without a temporary.
  static void mul_add(Matrix& c, const Matrix& a, const Matrix& b) {
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const S& ail = a(i, l);
        if (F::is_zero(ail)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Conjugate transpose.
  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = F::conj((*this)(i, j));
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  S trace() const {
    S t(0);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// Gauss-Jordan inverse. Exact fields pivot on the first nonzero entry, floats on the largest.
  Matrix inverse() const {
    if (!square()) throw StructuralError("Matrix::inverse: not square");
    const int n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      double best = 0.0;
      for (int r = col; r < n; ++r) {
        if (F::is_zero(a(r, col))) continue;
        if constexpr (F::exact) {
          piv = r;
          break;
        } else {
          const double v = F::abs(a(r, col));
          if (v > best) {
            best = v;
            piv = r;
          }
        }
      }
      if (piv < 0) throw EllipticityError("Matrix::inverse: singular matrix");
      if (piv != col) {
        for (int j = 0; j < n; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      }
      const S p = a(col, col);
      for (int j = 0; j < n; ++j) {
        a(col, j) /= p;
        inv(col, j) /= p;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || F::is_zero(a(r, col))) continue;
        const S f = a(r, col);
        for (int j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  template <class T>
  Matrix<T> convert() const {
    Matrix<T> m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = convert_scalar<T>((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw StructuralError(std::string("Matrix ") + op + ": shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

}  // namespace wreslab
