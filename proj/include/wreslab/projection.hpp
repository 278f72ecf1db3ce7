#pragma once

// Parametrices and projections in the truncated symbol algebra.
//
// Two independent routes lift an idempotent principal symbol p to a projection:
//   - algebraic_lift: the cubic iteration X <- 3 X#X - 2 X#X#X starting from p,
//     which squares the idempotency defect level each step (exact in Q(i));
//   - contour_lift: the Riesz integral (1/2 pi i) \oint Q(lambda) dlambda over
//     |lambda - 1| = 1/2, with Q(lambda) the parametrix of lambda - p1, by the
//     trapezoid rule (float mode).
// Both produce the same element: each lies in the closed commutative subalgebra
// generated by the starting symbol, where an idempotent lift is unique.

#include <optional>

#include "wreslab/parallel.hpp"
#include "wreslab/symbol.hpp"

namespace wreslab {

/// Candidate principal symbol of a projection: its values on xi = +1 and xi = -1.
template <class S>
struct PrincipalProjection {
  TrigPoly<S> plus;
  TrigPoly<S> minus;

  int k() const { return plus.k(); }

  template <class T>
  PrincipalProjection<T> convert() const {
    return {plus.template convert<T>(), minus.template convert<T>()};
  }
};

/// Throws PreconditionError unless p^2 = p on both co-sphere points (exact, or to 1e-10
/// on a grid in float mode); with `self_adjoint` also p^* = p.
template <class S>
void validate_principal(const PrincipalProjection<S>& p, bool self_adjoint = false);

/// p as an order-0 symbol with zero lower components, trusted to depth `depth`.
template <class S>
ClassicalSymbol<S> embed(const PrincipalProjection<S>& p, int depth);

/// P#P - P.
template <class S>
ClassicalSymbol<S> idempotency_defect(const ClassicalSymbol<S>& p, std::optional<int> depth = std::nullopt);

/// Homogeneous recursion for q with q#a = 1 = a#q down to the requested depth.
/// The principal symbol must have a trigonometric-polynomial inverse.
template <class S>
ClassicalSymbol<S> parametrix(const ClassicalSymbol<S>& a, std::optional<int> depth = std::nullopt);

/// Cubic iteration on an arbitrary order-0 starting symbol whose principal part is idempotent.
template <class S>
ClassicalSymbol<S> newton_lift(const ClassicalSymbol<S>& x0, int depth);

template <class S>
ClassicalSymbol<S> algebraic_lift(const PrincipalProjection<S>& p, int depth);

/// Reruns the lift on P^* # P, giving a self-adjoint projection with the same principal symbol.
template <class S>
ClassicalSymbol<S> self_adjointize(const ClassicalSymbol<S>& p, std::optional<int> depth = std::nullopt);

/// Riesz-projection lift; per-node parametrices run on OpenMP threads and are summed in node order.
ClassicalSymbol<C64> contour_lift(const ClassicalSymbol<C64>& p1, int nodes,
                                  parallel::Execution ex = parallel::Execution::omp);
/// Single-threaded reference for contour_lift.
inline ClassicalSymbol<C64> contour_lift_serial(const ClassicalSymbol<C64>& p1, int nodes) {
  return contour_lift(p1, nodes, parallel::Execution::serial);
}

/// Principal symbol of the positive spectral projection of the first-order system xi A(x) + B(x):
/// p(x, +-1) projects onto the positive eigenspace of +-A(x). Computed on a grid and fitted back
/// to a trigonometric polynomial. B does not enter the principal symbol and is only validated.
PrincipalProjection<C64> positive_spectral_projection_symbol(const TrigPoly<C64>& a, const TrigPoly<C64>& b);

extern template struct PrincipalProjection<QQi>;
extern template struct PrincipalProjection<C64>;

}  // namespace wreslab
