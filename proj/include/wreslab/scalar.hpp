#pragma once

// Scalar fields used throughout the library.
//
// QQi is the exact field Q(i) of Gaussian rationals, backed by GMP; C64 is
// std::complex<double>. Generic code reaches field operations through
// Field<S>, which also carries the comparison tolerance used by checks.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <ostream>
#include <string>

namespace wreslab {

using C64 = std::complex<double>;

class QQi {
 public:
  QQi() = default;
  QQi(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  QQi(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static QQi ratio(long p, long q) { return {mpq_class(p, q), mpq_class(0)}; }
  static QQi i() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }

  QQi conj() const { return {re_, -im_}; }

  QQi& operator+=(const QQi& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  QQi& operator-=(const QQi& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  QQi& operator*=(const QQi& o) {
    if (sgn(o.im_) == 0) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  QQi& operator/=(const QQi& o);

  friend QQi operator+(QQi a, const QQi& b) { return a += b; }
  friend QQi operator-(QQi a, const QQi& b) { return a -= b; }
  friend QQi operator*(QQi a, const QQi& b) { return a *= b; }
  friend QQi operator/(QQi a, const QQi& b) { return a /= b; }
  friend QQi operator-(const QQi& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const QQi& a, const QQi& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const QQi& a, const QQi& b) { return !(a == b); }

  C64 to_c64() const { return {re_.get_d(), im_.get_d()}; }

  /// "p/q" for each part, as used in JSON reports; integers print as "p".
  std::string re_string() const { return re_.get_str(); }
  std::string im_string() const { return im_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const QQi& z);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

template <class S>
struct Field;

template <>
struct Field<QQi> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";
  static constexpr double tolerance = 0.0;

  static QQi from_int(long v) { return QQi(v); }
  static QQi ratio(long p, long q) { return QQi::ratio(p, q); }
  static QQi imag_unit() { return QQi::i(); }
  static QQi conj(const QQi& z) { return z.conj(); }
  static bool is_zero(const QQi& z) { return z.is_zero(); }
  static bool near_zero(const QQi& z, double /*tol*/ = tolerance) { return z.is_zero(); }
  static double abs(const QQi& z) { return std::abs(z.to_c64()); }
  static C64 to_c64(const QQi& z) { return z.to_c64(); }
};

template <>
struct Field<C64> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "f64";
  static constexpr double tolerance = 1e-12;

  static C64 from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static C64 ratio(long p, long q) {
    return {static_cast<double>(p) / static_cast<double>(q), 0.0};
  }
  static C64 imag_unit() { return {0.0, 1.0}; }
  static C64 conj(const C64& z) { return std::conj(z); }
  static bool is_zero(const C64& z) { return z == C64{}; }
  static bool near_zero(const C64& z, double tol = tolerance) { return std::abs(z) <= tol; }
  static double abs(const C64& z) { return std::abs(z); }
  static C64 to_c64(const C64& z) { return z; }
};

/// Converts between scalar fields. Exact -> float rounds; float -> exact is not offered.
template <class To, class From>
To convert_scalar(const From& z);

template <>
inline QQi convert_scalar<QQi, QQi>(const QQi& z) {
  return z;
}
template <>
inline C64 convert_scalar<C64, QQi>(const QQi& z) {
  return z.to_c64();
}
template <>
inline C64 convert_scalar<C64, C64>(const C64& z) {
  return z;
}

}  // namespace wreslab
