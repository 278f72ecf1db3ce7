#include "wreslab/trig_poly.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace wreslab {

namespace {

int initial_cap() {
  if (const char* env = std::getenv("WRESLAB_CAP_J")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1'000'000) return static_cast<int>(v);
  }
  return 64;
}

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap{initial_cap()};
  return cap;
}

std::atomic<bool> g_truncate{false};

constexpr double kFloatTrim = 1e-15;

}  // namespace

int fourier_cap() { return cap_storage().load(std::memory_order_relaxed); }
void set_fourier_cap(int cap) {
  if (cap < 0) throw StructuralError("Fourier cap must be non-negative");
  cap_storage().store(cap, std::memory_order_relaxed);
}
bool fourier_truncation_enabled() { return g_truncate.load(std::memory_order_relaxed); }
void set_fourier_truncation(bool enabled) { g_truncate.store(enabled, std::memory_order_relaxed); }

std::vector<double> circle_grid(int count) {
  std::vector<double> xs(count);
  for (int n = 0; n < count; ++n) xs[n] = 2.0 * std::numbers::pi * n / count;
  return xs;
}

template <class S>
TrigPoly<S> TrigPoly<S>::from_entries(const std::vector<std::vector<TrigPoly>>& e) {
  const int k = static_cast<int>(e.size());
  if (k == 0) throw StructuralError("TrigPoly::from_entries: empty grid");
  int J = 0;
  for (const auto& row : e) {
    if (static_cast<int>(row.size()) != k) throw StructuralError("TrigPoly::from_entries: grid not square");
    for (const auto& p : row) {
      if (p.k() != 1) throw StructuralError("TrigPoly::from_entries: entries must be scalar");
      J = std::max(J, p.J());
    }
  }
  TrigPoly out(k);
  out.grow(J);
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l)
      for (int j = -e[i][l].J_; j <= e[i][l].J_; ++j) out.coeffs_[j + J](i, l) = e[i][l].coeffs_[j + e[i][l].J_](0, 0);
  out.trim();
  return out;
}

template <class S>
void TrigPoly<S>::grow(int J) {
  if (J <= J_) return;
  std::vector<Mat> c(2 * std::size_t(J) + 1, Mat::zero(k_));
  for (int j = -J_; j <= J_; ++j) c[j + J] = std::move(coeffs_[j + J_]);
  coeffs_ = std::move(c);
  J_ = J;
}

template <class S>
void TrigPoly<S>::set_coeff(int j, const Mat& m) {
  if (m.rows() != k_ || m.cols() != k_) throw StructuralError("TrigPoly::set_coeff: coefficient shape mismatch");
  grow(std::abs(j));
  coeffs_[j + J_] = m;
}

template <class S>
bool TrigPoly<S>::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Mat& m) { return m.is_zero(); });
}

template <class S>
bool TrigPoly<S>::near_zero(double tol) const {
  if constexpr (F::exact) {
    return is_zero();
  } else {
    // Sum of coefficient magnitudes bounds the sup norm.
    double total = 0.0;
    for (const auto& m : coeffs_) total += m.max_abs();
    return total <= tol;
  }
}

template <class S>
double TrigPoly<S>::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.max_abs());
  return m;
}

template <class S>
bool TrigPoly<S>::is_identity() const {
  for (int j = -J_; j <= J_; ++j) {
    const Mat& c = coeffs_[j + J_];
    if (j == 0) {
      if (c != Mat::identity(k_)) return false;
    } else if (!c.is_zero()) {
      return false;
    }
  }
  return true;
}

template <class S>
bool TrigPoly<S>::equals(const TrigPoly& o) const {
  if (k_ != o.k_) return false;
  const int J = std::max(J_, o.J_);
  for (int j = -J; j <= J; ++j) {
    const Mat* a = coeff_ptr(j);
    const Mat* b = o.coeff_ptr(j);
    if (a && b) {
      if (*a != *b) return false;
    } else if (a) {
      if (!a->is_zero()) return false;
    } else if (b) {
      if (!b->is_zero()) return false;
    }
  }
  return true;
}

template <class S>
TrigPoly<S>& TrigPoly<S>::operator+=(const TrigPoly& o) {
  if (k_ != o.k_) throw StructuralError("TrigPoly +: dimension mismatch");
  grow(o.J_);
  for (int j = -o.J_; j <= o.J_; ++j) coeffs_[j + J_] += o.coeffs_[j + o.J_];
  truncated_ = truncated_ || o.truncated_;
  return trim();
}

template <class S>
TrigPoly<S>& TrigPoly<S>::operator-=(const TrigPoly& o) {
  if (k_ != o.k_) throw StructuralError("TrigPoly -: dimension mismatch");
  grow(o.J_);
  for (int j = -o.J_; j <= o.J_; ++j) coeffs_[j + J_] -= o.coeffs_[j + o.J_];
  truncated_ = truncated_ || o.truncated_;
  return trim();
}

template <class S>
TrigPoly<S>& TrigPoly<S>::operator*=(const S& s) {
  for (auto& c : coeffs_) c *= s;
  return trim();
}

template <class S>
TrigPoly<S> TrigPoly<S>::multiply(const TrigPoly& o) const {
  if (k_ != o.k_) throw StructuralError("TrigPoly *: dimension mismatch");
  TrigPoly out(k_);
  out.grow(J_ + o.J_);
  for (int a = -J_; a <= J_; ++a) {
    const Mat& ca = coeffs_[a + J_];
    if (ca.is_zero()) continue;
    for (int b = -o.J_; b <= o.J_; ++b) {
      const Mat& cb = o.coeffs_[b + o.J_];
      if (cb.is_zero()) continue;
      Mat::mul_add(out.coeffs_[a + b + out.J_], ca, cb);
    }
  }
  out.truncated_ = truncated_ || o.truncated_;
  out.trim();
  out.enforce_cap();
  return out;
}

template <class S>
TrigPoly<S> TrigPoly<S>::scaled_by(const TrigPoly& g) const {
  if (g.k_ != 1) throw StructuralError("TrigPoly::scaled_by: multiplier must be scalar");
  TrigPoly out(k_);
  out.grow(J_ + g.J_);
  for (int a = -g.J_; a <= g.J_; ++a) {
    const S& s = g.coeffs_[a + g.J_](0, 0);
    if (F::is_zero(s)) continue;
    for (int b = -J_; b <= J_; ++b) {
      const Mat& cb = coeffs_[b + J_];
      if (cb.is_zero()) continue;
      out.coeffs_[a + b + out.J_] += cb * s;
    }
  }
  out.truncated_ = truncated_ || g.truncated_;
  out.trim();
  out.enforce_cap();
  return out;
}

template <class S>
TrigPoly<S> TrigPoly<S>::dx() const {
  TrigPoly out = *this;
  for (int j = -J_; j <= J_; ++j) out.coeffs_[j + J_] *= F::from_int(j);
  return out.trim();
}

template <class S>
TrigPoly<S> TrigPoly<S>::adjoint() const {
  TrigPoly out(k_);
  out.grow(J_);
  for (int j = -J_; j <= J_; ++j) out.coeffs_[-j + J_] = coeffs_[j + J_].adjoint();
  out.truncated_ = truncated_;
  return out;
}

template <class S>
TrigPoly<S> TrigPoly<S>::transpose() const {
  TrigPoly out(k_);
  out.grow(J_);
  for (int j = -J_; j <= J_; ++j) out.coeffs_[j + J_] = coeffs_[j + J_].transpose();
  out.truncated_ = truncated_;
  return out;
}

template <class S>
TrigPoly<S> TrigPoly<S>::trace() const {
  TrigPoly out(1);
  out.grow(J_);
  for (int j = -J_; j <= J_; ++j) out.coeffs_[j + J_](0, 0) = coeffs_[j + J_].trace();
  out.truncated_ = truncated_;
  return out.trim();
}

template <class S>
TrigPoly<S> TrigPoly<S>::entry(int i, int l) const {
  if (i < 0 || l < 0 || i >= k_ || l >= k_) throw StructuralError("TrigPoly::entry: index out of range");
  TrigPoly out(1);
  out.grow(J_);
  for (int j = -J_; j <= J_; ++j) out.coeffs_[j + J_](0, 0) = coeffs_[j + J_](i, l);
  out.truncated_ = truncated_;
  return out.trim();
}

template <class S>
S TrigPoly<S>::mean() const {
  if (k_ != 1) throw StructuralError("TrigPoly::mean: defined for scalar polynomials");
  return coeffs_[J_](0, 0);
}

template <class S>
Matrix<C64> TrigPoly<S>::evaluate(double x) const {
  Matrix<C64> v(k_, k_);
  for (int j = -J_; j <= J_; ++j) {
    const Mat& c = coeffs_[j + J_];
    if (c.is_zero()) continue;
    const C64 e = std::polar(1.0, j * x);
    for (int a = 0; a < k_; ++a)
      for (int b = 0; b < k_; ++b) v(a, b) += F::to_c64(c(a, b)) * e;
  }
  return v;
}

template <class S>
TrigPoly<S> TrigPoly<S>::truncated_to(int J) const {
  if (J < 0) throw StructuralError("TrigPoly::truncated_to: negative cutoff");
  if (J >= J_) return *this;
  TrigPoly out(k_);
  out.grow(J);
  for (int j = -J; j <= J; ++j) out.coeffs_[j + J] = coeffs_[j + J_];
  out.truncated_ = truncated_;
  for (int j = -J_; j <= J_; ++j)
    if (std::abs(j) > J && !coeffs_[j + J_].is_zero()) out.truncated_ = true;
  return out.trim();
}

template <class S>
TrigPoly<S>& TrigPoly<S>::trim() {
  if constexpr (!F::exact) {
    const double thresh = kFloatTrim * std::max(1.0, max_abs());
    for (auto& c : coeffs_)
      if (!c.is_zero() && c.max_abs() <= thresh) c = Mat::zero(k_);
  }
  int J = J_;
  while (J > 0 && coeffs_[J + J_].is_zero() && coeffs_[-J + J_].is_zero()) --J;
  if (J < J_) {
    std::vector<Mat> c(2 * std::size_t(J) + 1);
    for (int j = -J; j <= J; ++j) c[j + J] = std::move(coeffs_[j + J_]);
    coeffs_ = std::move(c);
    J_ = J;
  }
  return *this;
}

template <class S>
void TrigPoly<S>::enforce_cap() {
  const int cap = fourier_cap();
  if (J_ <= cap) return;
  if (!fourier_truncation_enabled())
    throw CapError("Fourier support " + std::to_string(J_) + " exceeds cap " + std::to_string(cap) +
                   " (raise WRESLAB_CAP_J or enable truncation)");
  *this = truncated_to(cap);
}

namespace {

// Faddeev-LeVerrier: returns (det, adj) using only ring operations and division by integers.
template <class S>
std::pair<TrigPoly<S>, TrigPoly<S>> det_and_adjugate(const TrigPoly<S>& a) {
  using F = Field<S>;
  const int n = a.k();
  const TrigPoly<S> id = TrigPoly<S>::identity(n);
  TrigPoly<S> m(n);                                   // M_0 = 0
  TrigPoly<S> c = TrigPoly<S>::scalar_monomial(0, S(1));  // c_n = 1
  for (int k = 1; k <= n; ++k) {
    m = a * m + id.scaled_by(c);                      // M_k = A M_{k-1} + c_{n-k+1} I
    c = (a * m).trace() * (-F::ratio(1, k));          // c_{n-k}
  }
  TrigPoly<S> det = (n % 2 == 0) ? c : -c;
  TrigPoly<S> adj = (n % 2 == 1) ? m : -m;
  return {std::move(det), std::move(adj)};
}

}  // namespace

template <class S>
TrigPoly<S> determinant(const TrigPoly<S>& a) {
  return det_and_adjugate(a).first;
}

template <class S>
TrigPoly<S> adjugate(const TrigPoly<S>& a) {
  return det_and_adjugate(a).second;
}

template <class S>
TrigPoly<S> inverse(const TrigPoly<S>& a) {
  using F = Field<S>;
  auto [det, adj] = det_and_adjugate(a);
  int lead = 0;
  double best = -1.0;
  for (int j = -det.J(); j <= det.J(); ++j) {
    const double v = F::abs(det.coeff(j)(0, 0));
    if (v > best) {
      best = v;
      lead = j;
    }
  }
  const S c = det.coeff(lead)(0, 0);
  if (F::is_zero(c)) throw EllipticityError("inverse: determinant vanishes identically");
  for (int j = -det.J(); j <= det.J(); ++j) {
    if (j == lead) continue;
    const S other = det.coeff(j)(0, 0);
    const bool negligible = F::exact ? F::is_zero(other) : F::abs(other) <= 1e-12 * best;
    if (!negligible)
      throw EllipticityError(
          "inverse: determinant is not a single Fourier mode, so the pointwise inverse "
          "is not a trigonometric polynomial");
  }
  const S one_over_c = S(1) / c;
  return adj.scaled_by(TrigPoly<S>::scalar_monomial(-lead, one_over_c));
}

template <class S>
double grid_max_abs(const TrigPoly<S>& f, int samples) {
  double m = 0.0;
  for (double x : circle_grid(samples)) m = std::max(m, f.evaluate(x).max_abs());
  return m;
}

template class TrigPoly<QQi>;
template class TrigPoly<C64>;

template TrigPoly<QQi> determinant(const TrigPoly<QQi>&);
template TrigPoly<C64> determinant(const TrigPoly<C64>&);
template TrigPoly<QQi> adjugate(const TrigPoly<QQi>&);
template TrigPoly<C64> adjugate(const TrigPoly<C64>&);
template TrigPoly<QQi> inverse(const TrigPoly<QQi>&);
template TrigPoly<C64> inverse(const TrigPoly<C64>&);
template double grid_max_abs(const TrigPoly<QQi>&, int);
template double grid_max_abs(const TrigPoly<C64>&, int);

}  // namespace wreslab
