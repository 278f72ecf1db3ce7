#include "wreslab/projection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace wreslab {

namespace {

constexpr double kGridTol = 1e-12;

int ceil_log2(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

template <class S>
bool poly_zero(const TrigPoly<S>& f, double tol) {
  if constexpr (Field<S>::exact) {
    (void)tol;
    return f.is_zero();
  } else {
    return grid_max_abs(f, 64) <= tol;
  }
}

template <class S>
bool symbol_zero(const ClassicalSymbol<S>& s, double scale, double rel = 1e-10) {
  if constexpr (Field<S>::exact) {
    (void)scale;
    (void)rel;
    return s.is_zero();
  } else {
    return s.max_abs() <= rel * std::max(1.0, scale);
  }
}

Eigen::MatrixXcd to_eigen(const Matrix<C64>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

template <class S>
void validate_principal(const PrincipalProjection<S>& p, bool self_adjoint) {
  if (p.plus.k() != p.minus.k()) throw StructuralError("PrincipalProjection: plus/minus dimension mismatch");
  const char* side[] = {"+1", "-1"};
  const TrigPoly<S>* vals[] = {&p.plus, &p.minus};
  for (int s = 0; s < 2; ++s) {
    const auto& v = *vals[s];
    if (!poly_zero(v * v - v, kGridTol))
      throw PreconditionError(std::string("principal symbol is not idempotent at xi = ") + side[s]);
    if (self_adjoint && !poly_zero(v - v.adjoint(), kGridTol))
      throw PreconditionError(std::string("principal symbol is not self-adjoint at xi = ") + side[s]);
  }
}

template <class S>
ClassicalSymbol<S> embed(const PrincipalProjection<S>& p, int depth) {
  if (depth < 0) throw StructuralError("embed: depth must be non-negative");
  return ClassicalSymbol<S>::single({0, p.plus, p.minus}, -depth);
}

template <class S>
ClassicalSymbol<S> idempotency_defect(const ClassicalSymbol<S>& p, std::optional<int> depth) {
  const auto pp = compose(p, p, depth);
  return pp - p.truncated(pp.floor());
}

template <class S>
ClassicalSymbol<S> parametrix(const ClassicalSymbol<S>& a, std::optional<int> depth) {
  using F = Field<S>;
  using C = HomComponent<S>;
  const int m = a.order();
  const int k = a.k();
  const int floor = detail::resolve_floor(-m, -m - a.depth(), depth, "parametrix");
  const int n = -m - floor;

  const C& am = a.principal();
  C inv_top;
  try {
    inv_top = C{-m, inverse(am.plus), inverse(am.minus)};
  } catch (const EllipticityError& e) {
    throw EllipticityError(std::string("parametrix: principal symbol is not invertible: ") + e.what());
  }

  // dA[l][g] = D_x^g a_{m-l}
  std::vector<std::vector<C>> dA(static_cast<std::size_t>(n + 1));
  for (int l = 0; l <= n; ++l) {
    auto& chain = dA[static_cast<std::size_t>(l)];
    chain.push_back(*a.find(m - l));
    for (int g = 1; l + g <= n; ++g) chain.push_back(chain.back().dx());
  }

  std::vector<C> q;  // q[i] has degree -m - i
  q.push_back(inv_top);
  for (int j = 1; j <= n; ++j) {
    // Degree -j part of q # a from the terms already known.
    C rhs = C::zero(k, -j);
    for (int i = 0; i < j; ++i) {
      C dq = q[static_cast<std::size_t>(i)];
      S inv_fact = S(1);
      for (int g = 0; i + g <= j; ++g) {
        if (g > 0) {
          dq = xi_derivative(dq);
          inv_fact = inv_fact / F::from_int(g);
        }
        if (dq.is_zero()) break;
        const int l = j - i - g;
        const C& da = dA[static_cast<std::size_t>(l)][static_cast<std::size_t>(g)];
        if (da.is_zero()) continue;
        C term = dq * da;
        if (g > 1) term *= inv_fact;
        rhs += term;
      }
    }
    rhs *= S(-1);
    q.push_back(rhs * inv_top);
  }

  ClassicalSymbol<S> out(k, -m, floor);
  for (const auto& c : q) out.set_component(c);
  return out;
}

template <class S>
ClassicalSymbol<S> newton_lift(const ClassicalSymbol<S>& x0, int depth) {
  using F = Field<S>;
  if (x0.order() != 0) throw StructuralError("newton_lift: starting symbol must have order 0");
  if (depth < 0) throw StructuralError("newton_lift: depth must be non-negative");
  if (x0.floor() > -depth)
    throw PrecisionError("newton_lift: starting symbol only known to floor " + std::to_string(x0.floor()),
                         x0.floor());
  validate_principal(PrincipalProjection<S>{x0.principal().plus, x0.principal().minus});

  const S three = F::from_int(3);
  const S two = F::from_int(2);
  ClassicalSymbol<S> x = x0.truncated(-depth);
  // The defect starts at degree <= -1 and its level at least doubles per step. In float mode the
  // defect bottoms out at rounding level, amplified by the x-derivatives in the lower degrees.
  const int needed = ceil_log2(depth + 1);
  const int max_iterations = needed + (F::exact ? 1 : 6);
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    const auto x2 = compose(x, x, depth);
    const auto defect = x2 - x;
    if constexpr (F::exact) {
      if (defect.is_zero()) return x;
    } else {
      const double size = defect.max_abs();
      const double scale = std::max(1.0, x.max_abs());
      if (size <= 1e-14 * scale || (size <= 1e-10 * scale && size > 0.5 * previous)) return x;
      previous = size;
    }
    x = x2 * three - compose(x2, x, depth) * two;
  }
  const auto defect = compose(x, x, depth) - x;
  if (!symbol_zero(defect, x.max_abs()))
    throw ConditioningError("newton_lift: idempotency defect did not vanish (defect " +
                            std::to_string(defect.max_abs()) + ", symbol size " + std::to_string(x.max_abs()) + ")");
  return x;
}

template <class S>
ClassicalSymbol<S> algebraic_lift(const PrincipalProjection<S>& p, int depth) {
  validate_principal(p);
  return newton_lift(embed(p, depth), depth);
}

template <class S>
ClassicalSymbol<S> self_adjointize(const ClassicalSymbol<S>& p, std::optional<int> depth) {
  if (p.order() != 0) throw StructuralError("self_adjointize: projection must have order 0");
  const int d = depth ? *depth : p.depth();
  if (d > p.depth())
    throw PrecisionError("self_adjointize: requested depth below the floor " + std::to_string(p.floor()), p.floor());
  const auto q = p.truncated(-d);
  if (!symbol_zero(idempotency_defect(q), q.max_abs()))
    throw PreconditionError("self_adjointize: input is not idempotent to its floor");
  validate_principal(PrincipalProjection<S>{q.principal().plus, q.principal().minus}, true);
  return newton_lift(compose(adjoint(q), q), d);
}

ClassicalSymbol<C64> contour_lift(const ClassicalSymbol<C64>& p1, int nodes, parallel::Execution ex) {
  if (p1.order() != 0) throw StructuralError("contour_lift: symbol must have order 0");
  if (nodes < 4) throw StructuralError("contour_lift: need at least 4 quadrature nodes");
  const auto& top = p1.principal();
  validate_principal(PrincipalProjection<C64>{top.plus, top.minus});
  for (const auto* v : {&top.plus, &top.minus}) {
    for (double x : circle_grid(64)) {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(v->evaluate(x)), false);
      for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double dist = std::abs(std::abs(es.eigenvalues()(i) - 1.0) - 0.5);
        if (dist < 0.05)
          throw ConditioningError("contour_lift: principal eigenvalue within 0.05 of the contour");
      }
    }
  }

  const int k = p1.k();
  const auto id = TrigPoly<C64>::identity(k);
  auto node_term = [&](int n) {
    const double theta = 2.0 * std::numbers::pi * n / nodes;
    const C64 shift = 0.5 * std::polar(1.0, theta);  // lambda - 1
    const C64 lambda = 1.0 + shift;
    ClassicalSymbol<C64> a = p1 * C64(-1.0);
    a.add_to_component({0, id * lambda, id * lambda});
    // (1 / 2 pi i) dlambda = (lambda - 1) dtheta / 2 pi
    return parametrix(a) * (shift / static_cast<double>(nodes));
  };
  const auto terms = parallel::map(ex, nodes, node_term);
  ClassicalSymbol<C64> out = terms.front();
  for (std::size_t n = 1; n < terms.size(); ++n) out += terms[n];
  return out;
}

PrincipalProjection<C64> positive_spectral_projection_symbol(const TrigPoly<C64>& a, const TrigPoly<C64>& b) {
  if (a.k() != b.k()) throw StructuralError("positive_spectral_projection_symbol: A and B differ in size");
  if (!(a - a.adjoint()).near_zero(kGridTol)) throw PreconditionError("positive_spectral_projection_symbol: A is not self-adjoint");
  if (!(b - b.adjoint()).near_zero(kGridTol)) throw PreconditionError("positive_spectral_projection_symbol: B is not self-adjoint");
  const int k = a.k();

  auto fit = [&](double sign) {
    for (int n = 64; n <= 4096; n *= 2) {
      const auto grid = circle_grid(n);
      std::vector<Eigen::MatrixXcd> samples;
      samples.reserve(grid.size());
      for (double x : grid) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a.evaluate(x)) * sign);
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
          const double ev = es.eigenvalues()(i);
          if (std::abs(ev) < 1e-8)
            throw EllipticityError("positive_spectral_projection_symbol: A(x) has an eigenvalue near 0 at x = " +
                                   std::to_string(x));
          if (ev > 0) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        }
        samples.push_back(std::move(p));
      }
      const int half = n / 2 - 1;
      const int keep = n / 4;
      std::vector<Matrix<C64>> coeffs;
      double tail = 0.0;
      for (int j = -half; j <= half; ++j) {
        Matrix<C64> c(k, k);
        for (int s = 0; s < n; ++s) {
          const C64 e = std::polar(1.0 / n, -j * grid[static_cast<std::size_t>(s)]);
          for (int r = 0; r < k; ++r)
            for (int q = 0; q < k; ++q) c(r, q) += samples[static_cast<std::size_t>(s)](r, q) * e;
        }
        if (std::abs(j) > keep) tail = std::max(tail, c.max_abs());
        coeffs.push_back(std::move(c));
      }
      if (tail > 1e-14) continue;
      TrigPoly<C64> out(k);
      for (int j = -keep; j <= keep; ++j) out.set_coeff(j, coeffs[static_cast<std::size_t>(j + half)]);
      out.trim();
      return out;
    }
    throw ConditioningError("positive_spectral_projection_symbol: projection not resolved by 4096 grid points");
  };

  PrincipalProjection<C64> p{fit(1.0), fit(-1.0)};
  for (const auto* v : {&p.plus, &p.minus}) {
    for (double x : circle_grid(256)) {
      const Matrix<C64> m = v->evaluate(x + 0.01);
      if ((m * m - m).max_abs() > 1e-10 || (m - m.adjoint()).max_abs() > 1e-10)
        throw ConditioningError("positive_spectral_projection_symbol: fitted symbol fails the grid check");
    }
  }
  return p;
}

template struct PrincipalProjection<QQi>;
template struct PrincipalProjection<C64>;

#define WRESLAB_INSTANTIATE(S)                                                                        \
  template void validate_principal(const PrincipalProjection<S>&, bool);                              \
  template ClassicalSymbol<S> embed(const PrincipalProjection<S>&, int);                              \
  template ClassicalSymbol<S> idempotency_defect(const ClassicalSymbol<S>&, std::optional<int>);      \
  template ClassicalSymbol<S> parametrix(const ClassicalSymbol<S>&, std::optional<int>);              \
  template ClassicalSymbol<S> newton_lift(const ClassicalSymbol<S>&, int);                            \
  template ClassicalSymbol<S> algebraic_lift(const PrincipalProjection<S>&, int);                     \
  template ClassicalSymbol<S> self_adjointize(const ClassicalSymbol<S>&, std::optional<int>);

WRESLAB_INSTANTIATE(QQi)
WRESLAB_INSTANTIATE(C64)

#undef WRESLAB_INSTANTIATE

}  // namespace wreslab
