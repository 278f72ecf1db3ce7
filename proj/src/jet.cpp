#include "wreslab/jet.hpp"

#include <string>

namespace wreslab {

template <class S>
MatrixJet<S>::MatrixJet(int k, int n_levels) : k_(k), n_(n_levels) {
  if (k < 1) throw StructuralError("MatrixJet: matrix dimension must be positive");
  if (n_levels < 1) throw StructuralError("MatrixJet: filtration depth must be positive");
  coeffs_.assign(static_cast<std::size_t>(n_levels), Mat::zero(k));
}

template <class S>
MatrixJet<S> MatrixJet<S>::monomial(int level, const Mat& m, int n_levels) {
  if (!m.square()) throw StructuralError("MatrixJet: coefficient must be square");
  MatrixJet out(m.rows(), n_levels);
  if (level < n_levels) out.set_coeff(level, m);
  return out;
}

template <class S>
MatrixJet<S> MatrixJet<S>::from_coeffs(std::vector<Mat> coeffs) {
  if (coeffs.empty()) throw StructuralError("MatrixJet: no coefficients");
  MatrixJet out(coeffs.front().rows(), static_cast<int>(coeffs.size()));
  for (std::size_t j = 0; j < coeffs.size(); ++j) out.set_coeff(static_cast<int>(j), coeffs[j]);
  return out;
}

template <class S>
void MatrixJet<S>::set_coeff(int j, const Mat& m) {
  if (j < 0 || j >= n_) throw StructuralError("MatrixJet: level " + std::to_string(j) + " out of range");
  if (m.rows() != k_ || m.cols() != k_) throw StructuralError("MatrixJet: coefficient shape mismatch");
  coeffs_[static_cast<std::size_t>(j)] = m;
}

template <class S>
int MatrixJet<S>::level(double tol) const {
  for (int j = 0; j < n_; ++j) {
    const auto& c = coeffs_[static_cast<std::size_t>(j)];
    if (F::exact || tol == 0.0 ? !c.is_zero() : !c.near_zero(tol)) return j;
  }
  return n_;
}

template <class S>
void MatrixJet<S>::check_compatible(const MatrixJet& o, const char* op) const {
  if (k_ != o.k_) throw StructuralError(std::string("MatrixJet ") + op + ": matrix dimension mismatch");
  if (n_ != o.n_) throw StructuralError(std::string("MatrixJet ") + op + ": filtration depth mismatch");
}

template <class S>
MatrixJet<S>& MatrixJet<S>::operator+=(const MatrixJet& o) {
  check_compatible(o, "+");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

template <class S>
MatrixJet<S>& MatrixJet<S>::operator-=(const MatrixJet& o) {
  check_compatible(o, "-");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

template <class S>
MatrixJet<S>& MatrixJet<S>::operator*=(const S& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

template <class S>
MatrixJet<S> MatrixJet<S>::multiply(const MatrixJet& o) const {
  check_compatible(o, "*");
  MatrixJet out(k_, n_);
  for (int i = 0; i < n_; ++i) {
    const auto& a = coeffs_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    for (int j = 0; i + j < n_; ++j) {
      const auto& b = o.coeffs_[static_cast<std::size_t>(j)];
      if (b.is_zero()) continue;
      Mat::mul_add(out.coeffs_[static_cast<std::size_t>(i + j)], a, b);
    }
  }
  return out;
}

template <class S>
MatrixJet<S> MatrixJet<S>::inverse() const {
  // A = A_0 (1 + N) with N nilpotent: A^{-1} = sum_n (-N)^n A_0^{-1}.
  const Mat a0_inv = coeffs_.front().inverse();
  const MatrixJet a0_inv_jet = constant(a0_inv, n_);
  MatrixJet nil = a0_inv_jet * *this - identity(k_, n_);
  MatrixJet term = identity(k_, n_);
  MatrixJet sum = identity(k_, n_);
  for (int n = 1; n < n_; ++n) {
    term = term * (-nil);
    sum += term;
  }
  return sum * a0_inv_jet;
}

template <class S>
MatrixJet<S> MatrixJet<S>::pow(int e) const {
  if (e < 0) throw StructuralError("MatrixJet::pow: negative exponent");
  MatrixJet out = identity(k_, n_);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

template <class S>
MatrixJet<S> jet_ring_op(const MatrixJet<S>& a, const MatrixJet<S>& b, JetOp op) {
  switch (op) {
    case JetOp::add:
      return a + b;
    case JetOp::sub:
      return a - b;
    case JetOp::mul:
      return a * b;
    case JetOp::commutator:
      return a * b - b * a;
  }
  throw StructuralError("jet_ring_op: unknown operation");
}

template <class S>
S residue_trace(const MatrixJet<S>& a, ResidueTraceSpec spec) {
  if (spec.j < 0 || spec.j >= a.n_levels())
    throw StructuralError("residue_trace: index " + std::to_string(spec.j) + " outside [0, " +
                          std::to_string(a.n_levels()) + ")");
  return a.coeff(spec.j).trace();
}

namespace {

template <class S>
bool is_idempotent(const MatrixJet<S>& p) {
  return (p * p - p).level() == p.n_levels();
}

int ceil_log2(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

}  // namespace

template <class S>
MatrixJet<S> newton_idempotent_lift(const MatrixJet<S>& x0) {
  using F = Field<S>;
  if ((x0 * x0 - x0).level() < 1)
    throw PreconditionError("newton_idempotent_lift: X0^2 - X0 is not in L^{-1}");
  const S three = F::from_int(3);
  const S two = F::from_int(2);
  MatrixJet<S> x = x0;
  const int iterations = ceil_log2(x0.n_levels()) + 1;
  for (int it = 0; it < iterations; ++it) {
    const MatrixJet<S> x2 = x * x;
    x = x2 * three - (x2 * x) * two;
  }
  return x;
}

template <class S>
AbcdParts<S> abcd_decompose(const MatrixJet<S>& p, const MatrixJet<S>& ptilde) {
  if (p.k() != ptilde.k() || p.n_levels() != ptilde.n_levels())
    throw StructuralError("abcd_decompose: operands differ in shape");
  if (!is_idempotent(p)) throw PreconditionError("abcd_decompose: P is not idempotent");
  if (!is_idempotent(ptilde)) throw PreconditionError("abcd_decompose: Ptilde is not idempotent");
  const MatrixJet<S> r = ptilde - p;
  if (r.level() < 1) throw PreconditionError("abcd_decompose: Ptilde - P is not in L^{-1}");
  const MatrixJet<S> q = MatrixJet<S>::identity(p.k(), p.n_levels()) - p;
  return {p * r * p, p * r * q, q * r * p, q * r * q};
}

template <class S>
std::vector<S> expansion_coefficients(int ell) {
  if (ell < 1) throw StructuralError("expansion_coefficients: ell must be >= 1");
  // Catalan(n) = Catalan(n-1) * 2(2n-1) / (n+1).
  std::vector<S> out;
  mpz_class catalan = 1;
  for (int k = 1; k <= ell; ++k) {
    const long n = k - 1;
    if (n > 0) catalan = catalan * (2 * (2 * n - 1)) / (n + 1);
    if constexpr (Field<S>::exact) {
      out.push_back(S(mpq_class(-catalan), mpq_class(0)));
    } else {
      out.push_back(S(-catalan.get_d(), 0.0));
    }
  }
  return out;
}

template <class S>
TraceInvarianceReport<S> verify_projection_trace_invariance(const MatrixJet<S>& p, const MatrixJet<S>& ptilde,
                                                            ResidueTraceSpec spec) {
  const int n = p.n_levels();
  if (spec.j < 0 || spec.j >= n) throw StructuralError("verify_projection_trace_invariance: j out of range");
  const auto parts = abcd_decompose(p, ptilde);
  const auto& [a, b, c, d] = parts;

  TraceInvarianceReport<S> rep;
  rep.j = spec.j;
  rep.n_levels = n;
  const MatrixJet<S> bc = b * c;
  const MatrixJet<S> cb = c * b;
  rep.identity_a_level = (a * a + a + bc).level();
  rep.identity_d_level = (d * d - d + cb).level();
  rep.tau_p = residue_trace(p, spec);
  rep.tau_ptilde = residue_trace(ptilde, spec);
  rep.difference = rep.tau_ptilde - rep.tau_p;
  rep.tau_b = residue_trace(b, spec);
  rep.tau_c = residue_trace(c, spec);

  bool ok = rep.identity_a_level == n && rep.identity_d_level == n;
  ok = ok && Field<S>::near_zero(rep.difference) && Field<S>::near_zero(rep.tau_b) && Field<S>::near_zero(rep.tau_c);

  const int max_ell = std::max(1, n - 2);
  const auto coeffs = expansion_coefficients<S>(max_ell);
  MatrixJet<S> sum_a(p.k(), n), sum_d(p.k(), n), sum_comm(p.k(), n);
  MatrixJet<S> bc_pow = MatrixJet<S>::identity(p.k(), n);
  MatrixJet<S> cb_pow = MatrixJet<S>::identity(p.k(), n);
  const MatrixJet<S> minus_d = -d;
  for (int ell = 1; ell <= max_ell; ++ell) {
    const S& ck = coeffs[static_cast<std::size_t>(ell - 1)];
    // (CB)^{ell-1} C, before advancing the power.
    const MatrixJet<S> inner = cb_pow * c;
    bc_pow = bc_pow * bc;
    cb_pow = cb_pow * cb;
    sum_a += bc_pow * ck;
    sum_d += cb_pow * ck;
    sum_comm += (b * inner - inner * b) * ck;
    const int la = (a - sum_a).level();
    const int ld = (minus_d - sum_d).level();
    const int lc = (a + d - sum_comm).level();
    rep.expansion_a_levels.push_back(la);
    rep.expansion_d_levels.push_back(ld);
    rep.commutator_levels.push_back(lc);
    const int need = std::min(n, 2 + ell);
    ok = ok && la >= need && ld >= need && lc >= need;
  }
  rep.passed = ok;
  return rep;
}

#define WRESLAB_INSTANTIATE(S)                                                                             \
  template class MatrixJet<S>;                                                                             \
  template MatrixJet<S> jet_ring_op(const MatrixJet<S>&, const MatrixJet<S>&, JetOp);                      \
  template S residue_trace(const MatrixJet<S>&, ResidueTraceSpec);                                         \
  template MatrixJet<S> newton_idempotent_lift(const MatrixJet<S>&);                                       \
  template AbcdParts<S> abcd_decompose(const MatrixJet<S>&, const MatrixJet<S>&);                          \
  template std::vector<S> expansion_coefficients<S>(int);                                                  \
  template TraceInvarianceReport<S> verify_projection_trace_invariance(const MatrixJet<S>&, const MatrixJet<S>&, \
                                                                       ResidueTraceSpec);

WRESLAB_INSTANTIATE(QQi)
WRESLAB_INSTANTIATE(C64)

#undef WRESLAB_INSTANTIATE

}  // namespace wreslab
