#pragma once

// Random and named test objects: symbols, frames, principal projections and
// self-adjoint first-order systems. All exact objects are built in Q(i) and can
// be converted to float mode.

#include "wreslab/jet.hpp"
#include "wreslab/projection.hpp"
#include "wreslab/random.hpp"

namespace wreslab::gen {

/// Small Gaussian rational (a + bi)/d with |a|, |b| <= 3 and d in {1, 2}.
QQi small_scalar(Rng& rng);

/// Random k x k trigonometric polynomial with support in [-J, J] and at most `modes` nonzero modes.
TrigPoly<QQi> trig_poly(Rng& rng, int k, int J, int modes = 3);

/// Random classical symbol of the given order and depth (floor = order - depth). Each component is
/// nonzero with probability about 3/4 and independent on the two co-sphere points.
ClassicalSymbol<QQi> symbol(Rng& rng, int k, int order, int depth, int J);

/// Order -1 perturbation trusted to `floor`: random low-degree terms with Fourier support in [-1, 1].
ClassicalSymbol<QQi> junk(Rng& rng, int k, int floor);

/// Random differential symbol sum_{d <= order} c_d(x) xi^d (the form the Fourier oracle accepts).
ClassicalSymbol<QQi> differential_symbol(Rng& rng, int k, int order, int floor, int J);

/// Planar rotation by n x in the (a, b) coordinate plane of C^k; special orthogonal.
TrigPoly<QQi> rotation(int k, int a, int b, int n);
/// e^{inx}, a unimodular scalar.
TrigPoly<QQi> phase(int n);
/// Product of one or two random plane rotations (n in {-1, 1}); special orthogonal.
TrigPoly<QQi> random_rotation_frame(Rng& rng, int k);

/// Random idempotent principal symbol of constant rank on each co-sphere point: V D V^{-1} with D a
/// random 0/1 diagonal and V a product of an x-dependent rotation or unipotent and a constant
/// unipotent. Not self-adjoint in general. Entries have Fourier support in [-2, 2].
PrincipalProjection<QQi> random_principal(Rng& rng, int k);
/// As random_principal but with V special orthogonal, so p is self-adjoint.
PrincipalProjection<QQi> random_self_adjoint_principal(Rng& rng, int k);

/// p(x, +-1) = (1 + cos(x) sigma_3 +- sin(x) sigma_1) / 2.
PrincipalProjection<QQi> winding_family();
/// Szego principal: identity for xi > 0, zero for xi < 0.
PrincipalProjection<QQi> szego(int k);

/// Random jet whose coefficients below `start_level` vanish.
MatrixJet<QQi> random_jet(Rng& rng, int k, int n_levels, int start_level);
/// Random unit of the jet ring: a constant unipotent times 1 + (random element of L^{-1}).
MatrixJet<QQi> random_unit_jet(Rng& rng, int k, int n_levels);
/// V D V^{-1} for a random unit V and a 0/1 diagonal D of the given rank.
MatrixJet<QQi> random_idempotent_jet(Rng& rng, int k, int n_levels, int rank);

/// Pauli matrices as constant polynomials.
TrigPoly<QQi> sigma(int which);

/// Random self-adjoint elliptic k x k first-order system xi A(x) + B(x). For k = 2, A is sigma_3 or the
/// winding generator cos(nx) sigma_3 + sin(nx) sigma_1; for other k, a rotated diagonal of signs
/// (both signs present when k > 1). A small Hermitian trigonometric perturbation keeps |eigenvalues|
/// above 0.85; B is random Hermitian.
struct FirstOrderSystem {
  TrigPoly<C64> a;
  TrigPoly<C64> b;
};
FirstOrderSystem random_first_order_system(Rng& rng, int k = 2);

/// Order-0 starting symbol for a Newton lift of the spectral principal p that sees B: p plus the
/// order -1 term (p B (1 - p) + (1 - p) B p) / 2 on each co-sphere point.
ClassicalSymbol<C64> spectral_seed(const FirstOrderSystem& sys, const PrincipalProjection<C64>& p, int depth);

}  // namespace wreslab::gen
