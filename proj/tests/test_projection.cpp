#include "doctest.h"
#include "wreslab/generators.hpp"
#include "wreslab/residue.hpp"

using namespace wreslab;

namespace {

using Poly = TrigPoly<QQi>;
using Sym = ClassicalSymbol<QQi>;
using FSym = ClassicalSymbol<C64>;

Poly e(int j, QQi c = QQi(1)) { return Poly::scalar_monomial(j, c); }

Poly constant_idempotent() {
  // Oblique rank-one idempotent [[1, 2], [0, 0]].
  return Poly::constant(Matrix<QQi>::from_rows({{QQi(1), QQi(2)}, {QQi(0), QQi(0)}}));
}

double gap(const FSym& a, const FSym& b) { return (a - b).max_abs(); }

bool self_adjoint_to_floor(const Sym& q) { return adjoint(q).truncated(q.floor()) == q; }

}  // namespace

TEST_CASE("principal validation") {
  CHECK_NOTHROW(validate_principal(gen::winding_family(), true));
  CHECK_NOTHROW(validate_principal(PrincipalProjection<QQi>{constant_idempotent(), Poly(2)}));
  CHECK_THROWS_AS(validate_principal(PrincipalProjection<QQi>{constant_idempotent(), Poly(2)}, true),
                  PreconditionError);
  CHECK_THROWS_AS(validate_principal(PrincipalProjection<QQi>{Poly::identity(2) * QQi(2), Poly(2)}),
                  PreconditionError);
  CHECK_NOTHROW(validate_principal(gen::winding_family().convert<C64>(), true));
}

TEST_CASE("parametrix examples") {
  const Sym abs = symbols::abs_xi_pow<QQi>(1, 1, -4);
  CHECK(parametrix(abs) == symbols::abs_xi_pow<QQi>(1, -1, -6));
  CHECK(parametrix(symbols::xi<QQi>(2, -3)) == symbols::signed_xi_pow<QQi>(2, -1, -5));

  Sym a = abs;
  a.add_to_component({0, e(1), e(1)});
  const Sym q = parametrix(a, 1);
  CHECK(q.floor() == -2);
  CHECK(q.component(-1) == HomComponent<QQi>{-1, e(0), e(0)});
  CHECK(q.component(-2) == HomComponent<QQi>{-2, -e(1), -e(1)});
  const Sym one = Sym::multiplication(Poly::identity(1), -1);
  CHECK(compose(q, a, 1) == one);
  CHECK(compose(a, q, 1) == one);
}

TEST_CASE("parametrix inverts random elliptic symbols") {
  Rng rng = trial_rng(41, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 1, 3));
    const int order = static_cast<int>(uniform_int(rng, -1, 2));
    Sym a = gen::symbol(rng, k, order, 4, 2);
    const Poly phi = gen::random_rotation_frame(rng, k);
    a.set_component({order, phi, Poly::identity(k).scaled_by(gen::phase(1)) * QQi(2)});
    const Sym q = parametrix(a, 4);
    const Sym id = Sym::multiplication(Poly::identity(k), -4);
    CHECK(compose(q, a, 4) == id);
    CHECK(compose(a, q, 4) == id);
  }
}

TEST_CASE("parametrix needs an invertible principal symbol") {
  Sym a(1, 1, -2);
  a.set_component({1, e(0) + e(1), e(0)});
  CHECK_THROWS_AS(parametrix(a), EllipticityError);
  CHECK_THROWS_AS(parametrix(Sym(2, 0, -2)), EllipticityError);
}

TEST_CASE("algebraic lift examples") {
  const PrincipalProjection<QQi> c{constant_idempotent(), constant_idempotent()};
  CHECK(algebraic_lift(c, 5) == embed(c, 5));
  CHECK(algebraic_lift(gen::szego(2), 6) == symbols::heaviside<QQi>(2, -6));
  const Sym w = algebraic_lift(gen::winding_family(), 6);
  CHECK(idempotency_defect(w).is_zero());
  CHECK(wres(w).is_zero());
  CHECK_THROWS_AS(algebraic_lift(PrincipalProjection<QQi>{Poly::identity(2) * QQi(2), Poly(2)}, 3),
                  PreconditionError);
}

TEST_CASE("newton lifts of perturbed principals") {
  Rng rng = trial_rng(42, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 1, 3));
    const auto p = gen::random_principal(rng, k);
    const Sym x1 = embed(p, 5) + gen::junk(rng, k, -5);
    const Sym x2 = embed(p, 5) + gen::junk(rng, k, -5);
    const Sym l1 = newton_lift(x1, 5);
    const Sym l2 = newton_lift(x2, 5);
    CHECK(l1.floor() == -5);
    CHECK(idempotency_defect(l1).is_zero());
    CHECK(idempotency_defect(l2).is_zero());
    CHECK(l1.principal() == embed(p, 0).principal());
    CHECK(wres(l1) == wres(l2));
    CHECK(wres(l1).is_zero());
  }
  CHECK_THROWS_AS(newton_lift(symbols::xi<QQi>(1, -2), 2), StructuralError);
}

TEST_CASE("contour lift examples") {
  const auto c = PrincipalProjection<QQi>{constant_idempotent(), constant_idempotent()}.convert<C64>();
  CHECK(gap(contour_lift(embed(c, 4), 64), embed(c, 4)) <= 1e-12);
  const auto szego = contour_lift(embed(gen::szego(2).convert<C64>(), 5), 64);
  CHECK(gap(szego, symbols::heaviside<C64>(2, -5)) <= 1e-12);
  const auto w = gen::winding_family().convert<C64>();
  CHECK(gap(contour_lift(embed(w, 4), 128), algebraic_lift(w, 4)) <= 1e-6);
}

TEST_CASE("contour and newton agree from the same perturbed start") {
  Rng rng = trial_rng(43, 0);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = gen::random_principal(rng, 2).convert<C64>();
    const FSym x0 = embed(p, 4) + gen::junk(rng, 2, -4).convert<C64>();
    const FSym a = newton_lift(x0, 4);
    const FSym b = contour_lift(x0, 128);
    CHECK(gap(a, b) <= 1e-6 * std::max(1.0, a.max_abs()));
  }
}

TEST_CASE("contour lift checks its input") {
  CHECK_THROWS_AS(contour_lift(symbols::xi<C64>(1, -2), 64), StructuralError);
  const auto bad = PrincipalProjection<C64>{TrigPoly<C64>::identity(2) * C64(1.5), TrigPoly<C64>(2)};
  CHECK_THROWS_AS(contour_lift(embed(bad, 2), 64), Error);
  CHECK_THROWS_AS(contour_lift(embed(gen::szego(1).convert<C64>(), 2), 0), Error);
}

TEST_CASE("contour lift is identical on one thread and on the pool") {
  const auto w = gen::winding_family().convert<C64>();
  const FSym x = embed(w, 4);
  CHECK(contour_lift_serial(x, 96) == contour_lift(x, 96, parallel::Execution::omp));
}

TEST_CASE("self adjointize") {
  const Poly h = Poly::constant(Matrix<QQi>::from_rows({{QQi::ratio(1, 2), QQi::ratio(1, 2)},
                                                       {QQi::ratio(1, 2), QQi::ratio(1, 2)}}));
  const Sym ph = embed(PrincipalProjection<QQi>{h, h}, 4);
  CHECK(self_adjointize(ph) == ph);
  const Sym sz = symbols::heaviside<QQi>(2, -5);
  CHECK(self_adjointize(sz) == sz);

  Rng rng = trial_rng(44, 0);
  const auto w = gen::winding_family();
  const Sym lift = newton_lift(embed(w, 5) + gen::junk(rng, 2, -5), 5);
  const Sym q = self_adjointize(lift);
  CHECK(self_adjoint_to_floor(q));
  CHECK(idempotency_defect(q).is_zero());
  CHECK(q.principal() == lift.principal());
  CHECK(wres(q) == wres(lift));

  const Sym oblique = embed(PrincipalProjection<QQi>{constant_idempotent(), constant_idempotent()}, 3);
  CHECK_THROWS_AS(self_adjointize(oblique), PreconditionError);
  CHECK_THROWS_AS(self_adjointize(embed(w, 3) + symbols::abs_xi_pow<QQi>(2, 0, -3)), PreconditionError);
}

TEST_CASE("positive spectral projection symbol") {
  using FPoly = TrigPoly<C64>;
  const auto sz = positive_spectral_projection_symbol(FPoly::identity(1), FPoly(1));
  CHECK((sz.plus - FPoly::identity(1)).max_abs() <= 1e-10);
  CHECK(sz.minus.max_abs() <= 1e-10);

  const auto s3 = gen::sigma(3).convert<C64>();
  const auto d = positive_spectral_projection_symbol(s3, FPoly(2));
  CHECK((d.plus - Poly::constant(Matrix<QQi>::unit(2, 0, 0)).convert<C64>()).max_abs() <= 1e-10);
  CHECK((d.minus - Poly::constant(Matrix<QQi>::unit(2, 1, 1)).convert<C64>()).max_abs() <= 1e-10);

  const auto w = gen::winding_family().convert<C64>();
  const FPoly a = (w.plus * C64(2) - FPoly::identity(2));
  const auto p = positive_spectral_projection_symbol(a, FPoly(2));
  CHECK((p.plus - w.plus).max_abs() <= 1e-10);
  CHECK((p.minus - (FPoly::identity(2) - w.plus)).max_abs() <= 1e-10);

  CHECK_THROWS_AS(positive_spectral_projection_symbol(FPoly(1), FPoly(1)), EllipticityError);
  CHECK_THROWS_AS(positive_spectral_projection_symbol(FPoly::identity(1), FPoly::identity(2)), Error);
}

TEST_CASE("lifts of spectral principals have vanishing residue") {
  Rng rng = trial_rng(45, 0);
  for (int trial = 0; trial < 3; ++trial) {
    const auto sys = gen::random_first_order_system(rng, 2);
    const auto p = positive_spectral_projection_symbol(sys.a, sys.b);
    const FSym lift = newton_lift(gen::spectral_seed(sys, p, 4), 4);
    CHECK(std::abs(wres(lift)) <= 1e-8);
    CHECK(idempotency_defect(lift).max_abs() <= 1e-8 * std::max(1.0, lift.max_abs()));
  }
}
