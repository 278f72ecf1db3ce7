#pragma once

// Filtered-ring machinery on the jet ring Mat(k) (x) K[t]/(t^N).
//
// A = sum_j A_j t^j. The filtration is L^{-j} = {A : A_0 = ... = A_{j-1} = 0},
// and tau_j(A) = tr(A_j) is a residue trace: linear, tracial, and zero on L^{-(j+1)}.

#include <vector>

#include "wreslab/matrix.hpp"

namespace wreslab {

template <class S>
class MatrixJet {
 public:
  using F = Field<S>;
  using Mat = Matrix<S>;

  MatrixJet(int k, int n_levels);
  /// t^level * m.
  static MatrixJet monomial(int level, const Mat& m, int n_levels);
  static MatrixJet constant(const Mat& m, int n_levels) { return monomial(0, m, n_levels); }
  static MatrixJet identity(int k, int n_levels) { return constant(Mat::identity(k), n_levels); }
  static MatrixJet from_coeffs(std::vector<Mat> coeffs);

  int k() const noexcept { return k_; }
  int n_levels() const noexcept { return n_; }
  const Mat& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  void set_coeff(int j, const Mat& m);
  const std::vector<Mat>& coeffs() const noexcept { return coeffs_; }

  /// Smallest j with A_j != 0 (within `tol` in float mode); n_levels() for zero.
  int level(double tol = F::tolerance) const;
  bool is_zero() const { return level(0.0) == n_; }

  MatrixJet& operator+=(const MatrixJet& o);
  MatrixJet& operator-=(const MatrixJet& o);
  MatrixJet& operator*=(const S& s);
  friend MatrixJet operator+(MatrixJet a, const MatrixJet& b) { return a += b; }
  friend MatrixJet operator-(MatrixJet a, const MatrixJet& b) { return a -= b; }
  friend MatrixJet operator-(MatrixJet a) { return a *= S(-1); }
  friend MatrixJet operator*(MatrixJet a, const S& s) { return a *= s; }
  friend MatrixJet operator*(const S& s, MatrixJet a) { return a *= s; }
  /// Truncated Cauchy product.
  friend MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) { return a.multiply(b); }
  friend bool operator==(const MatrixJet& a, const MatrixJet& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const MatrixJet& a, const MatrixJet& b) { return !(a == b); }

  MatrixJet multiply(const MatrixJet& o) const;
  /// Inverse of a unit (A_0 invertible), by Neumann series in the nilpotent part.
  MatrixJet inverse() const;
  MatrixJet pow(int e) const;

  template <class T>
  MatrixJet<T> convert() const {
    std::vector<Matrix<T>> c;
    for (const auto& m : coeffs_) c.push_back(m.template convert<T>());
    return MatrixJet<T>::from_coeffs(std::move(c));
  }

 private:
  void check_compatible(const MatrixJet& o, const char* op) const;

  int k_;
  int n_;
  std::vector<Mat> coeffs_;
};

enum class JetOp { add, sub, mul, commutator };

template <class S>
MatrixJet<S> jet_ring_op(const MatrixJet<S>& a, const MatrixJet<S>& b, JetOp op);

struct ResidueTraceSpec {
  int j = 0;
};

/// tau_j(A) = tr A_j.
template <class S>
S residue_trace(const MatrixJet<S>& a, ResidueTraceSpec spec);

/// Iterates X <- 3X^2 - 2X^3 ceil(log2 N) + 1 times. X0^2 - X0 must lie in L^{-1}.
template <class S>
MatrixJet<S> newton_idempotent_lift(const MatrixJet<S>& x0);

template <class S>
struct AbcdParts {
  MatrixJet<S> a, b, c, d;
};

/// With R = Ptilde - P:  A = PRP, B = PR(1-P), C = (1-P)RP, D = (1-P)R(1-P).
template <class S>
AbcdParts<S> abcd_decompose(const MatrixJet<S>& p, const MatrixJet<S>& ptilde);

/// Coefficients c_1..c_ell of the root x(y) = sum c_k y^k of x^2 + x + y = 0 with x(0) = 0;
/// c_k = -Catalan(k-1).
template <class S>
std::vector<S> expansion_coefficients(int ell);

template <class S>
struct TraceInvarianceReport {
  int j = 0;
  int n_levels = 0;
  /// Filtration level of A^2 + A + BC and D^2 - D + CB (n_levels means exactly zero).
  int identity_a_level = 0;
  int identity_d_level = 0;
  S tau_p{};
  S tau_ptilde{};
  S difference{};
  S tau_b{};
  S tau_c{};
  /// For ell = 1..max_ell: levels of A - sum c_k (BC)^k,  -D - sum c_k (CB)^k,
  /// and A + D - sum c_k [B, (CB)^{k-1} C]. Each must be >= 2 + ell.
  std::vector<int> expansion_a_levels;
  std::vector<int> expansion_d_levels;
  std::vector<int> commutator_levels;
  bool passed = false;
};

template <class S>
TraceInvarianceReport<S> verify_projection_trace_invariance(const MatrixJet<S>& p, const MatrixJet<S>& ptilde,
                                                            ResidueTraceSpec spec);

extern template class MatrixJet<QQi>;
extern template class MatrixJet<C64>;

}  // namespace wreslab
