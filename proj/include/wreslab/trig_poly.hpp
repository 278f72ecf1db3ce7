#pragma once

// Matrix-valued trigonometric polynomials on the circle:
//   f(x) = sum_{|j| <= J} c_j e^{ijx},  c_j in Mat(k).
// These are the coefficient functions of every symbol in the library.

#include <cmath>
#include <numbers>
#include <vector>

#include "wreslab/errors.hpp"
#include "wreslab/matrix.hpp"
#include "wreslab/scalar.hpp"

namespace wreslab {

/// Global Fourier cutoff. Initialized from WRESLAB_CAP_J (default 64).
int fourier_cap();
void set_fourier_cap(int cap);
/// When off (the default) a product whose support exceeds the cap throws CapError;
/// when on it is cut at the cap and the result is flagged as truncated.
bool fourier_truncation_enabled();
void set_fourier_truncation(bool enabled);

template <class S>
class TrigPoly {
 public:
  using F = Field<S>;
  using Mat = Matrix<S>;

  TrigPoly() : TrigPoly(1) {}
  explicit TrigPoly(int k) : k_(k), J_(0), coeffs_(1, Mat::zero(k)) {
    if (k < 1) throw StructuralError("TrigPoly: matrix dimension must be positive");
  }

  static TrigPoly constant(const Mat& m) { return monomial(0, m); }
  static TrigPoly identity(int k) { return constant(Mat::identity(k)); }
  static TrigPoly scalar(int k, const S& s) { return constant(Mat::identity(k) * s); }
  static TrigPoly monomial(int j, const Mat& m) {
    if (!m.square()) throw StructuralError("TrigPoly: coefficient must be square");
    TrigPoly p(m.rows());
    p.set_coeff(j, m);
    return p;
  }
  /// Scalar (k = 1) monomial s e^{ijx}.
  static TrigPoly scalar_monomial(int j, const S& s) {
    Mat m(1, 1);
    m(0, 0) = s;
    return monomial(j, m);
  }
  /// cos(nx) and sin(nx) as exact k = 1 polynomials.
  static TrigPoly cos_nx(int n) {
    if (n == 0) return scalar_monomial(0, S(1));
    return scalar_monomial(n, F::ratio(1, 2)) + scalar_monomial(-n, F::ratio(1, 2));
  }
  static TrigPoly sin_nx(int n) {
    if (n == 0) return TrigPoly(1);
    const S half_i = F::imag_unit() * F::ratio(1, 2);
    // sin(nx) = (e^{inx} - e^{-inx}) / (2i)
    return scalar_monomial(n, -half_i) + scalar_monomial(-n, half_i);
  }
  /// Assemble from a k x k grid of scalar polynomials.
  static TrigPoly from_entries(const std::vector<std::vector<TrigPoly>>& e);

  int k() const noexcept { return k_; }
  int J() const noexcept { return J_; }
  bool truncated() const noexcept { return truncated_; }

  /// Coefficient of e^{ijx}; zero outside the band.
  Mat coeff(int j) const {
    if (j < -J_ || j > J_) return Mat::zero(k_);
    return coeffs_[j + J_];
  }
  const Mat* coeff_ptr(int j) const {
    if (j < -J_ || j > J_) return nullptr;
    return &coeffs_[j + J_];
  }
  void set_coeff(int j, const Mat& m);

  bool is_zero() const;
  bool near_zero(double tol = F::tolerance) const;
  double max_abs() const;
  bool is_identity() const;

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(const S& s);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= S(-1); }
  friend TrigPoly operator*(TrigPoly a, const S& s) { return a *= s; }
  friend TrigPoly operator*(const S& s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) { return a.multiply(b); }

  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.equals(b); }
  friend bool operator!=(const TrigPoly& a, const TrigPoly& b) { return !a.equals(b); }

  /// Pointwise matrix product; the band grows additively (subject to the cap).
  TrigPoly multiply(const TrigPoly& o) const;
  /// g(x) * this(x) for a scalar (k = 1) polynomial g.
  TrigPoly scaled_by(const TrigPoly& g) const;

  /// D_x = -i d/dx: multiplies coefficient j by j.
  TrigPoly dx() const;
  /// Pointwise conjugate transpose: coefficient j moves to -j and is adjointed.
  TrigPoly adjoint() const;
  TrigPoly transpose() const;
  /// Pointwise matrix trace, a k = 1 polynomial.
  TrigPoly trace() const;
  /// Entry (i, j) as a k = 1 polynomial.
  TrigPoly entry(int i, int j) const;
  /// Value of a k = 1 polynomial's zeroth coefficient (its mean over [0, 2pi)).
  S mean() const;

  Matrix<C64> evaluate(double x) const;

  /// Copy with every |j| > J dropped; flagged truncated if anything nonzero was lost.
  TrigPoly truncated_to(int J) const;
  /// Shrinks the band to the outermost nonzero coefficient. In float mode also zeroes
  /// coefficients below 1e-15 relative to the largest one.
  TrigPoly& trim();

  template <class T>
  TrigPoly<T> convert() const {
    TrigPoly<T> p(k_);
    for (int j = -J_; j <= J_; ++j) {
      const auto& c = coeffs_[j + J_];
      if (!c.is_zero()) p.set_coeff(j, c.template convert<T>());
    }
    return p;
  }

 private:
  bool equals(const TrigPoly& o) const;
  void grow(int J);
  void enforce_cap();

  int k_;
  int J_;
  std::vector<Mat> coeffs_;
  bool truncated_ = false;
};

/// Determinant of a matrix polynomial (Faddeev-LeVerrier; exact over Q(i)).
template <class S>
TrigPoly<S> determinant(const TrigPoly<S>& a);
/// Adjugate matrix polynomial: adj(a) * a = det(a) * I.
template <class S>
TrigPoly<S> adjugate(const TrigPoly<S>& a);
/// Pointwise inverse, available when det(a) is a single monomial c e^{inx}
/// (within tolerance in float mode). Otherwise throws EllipticityError.
template <class S>
TrigPoly<S> inverse(const TrigPoly<S>& a);

/// Samples x_n = 2 pi n / count, n = 0..count-1.
std::vector<double> circle_grid(int count);

/// Max over the grid of |f(x)| (entrywise), evaluated in double precision.
template <class S>
double grid_max_abs(const TrigPoly<S>& f, int samples = 64);

extern template class TrigPoly<QQi>;
extern template class TrigPoly<C64>;

}  // namespace wreslab
