#include "doctest.h"
#include "oracles.hpp"
#include "wreslab/generators.hpp"

using namespace wreslab;

namespace {

using Poly = TrigPoly<QQi>;
using Sym = ClassicalSymbol<QQi>;
using Comp = HomComponent<QQi>;

Poly e(int j, QQi c = QQi(1)) { return Poly::scalar_monomial(j, c); }
Poly one() { return e(0); }

/// c * xi^d for xi > 0 and c * (sign) for xi < 0 chosen so the component extends to c xi^d.
Comp xi_pow(int d, const Poly& c) { return {d, c, d % 2 == 0 ? c : -c}; }
Comp abs_pow(int d, const Poly& c) { return {d, c, c}; }

Sym sym(int order, int floor, std::initializer_list<Comp> comps, int k = 1) {
  Sym s(k, order, floor);
  for (const auto& c : comps) s.set_component(c);
  return s;
}

}  // namespace

TEST_CASE("trig poly arithmetic") {
  CHECK((e(3) * e(-1)) == e(2));
  CHECK(e(4, QQi(2)).dx() == e(4, QQi(8)));
  CHECK(Poly::cos_nx(1) * Poly::cos_nx(1) + Poly::sin_nx(1) * Poly::sin_nx(1) == one());
  CHECK(e(2, QQi::i()).adjoint() == e(-2, -QQi::i()));
  CHECK((e(2) + e(-3)).J() == 3);
  CHECK((e(2) - e(2)).trim().J() == 0);
}

TEST_CASE("trig poly determinant and inverse") {
  const Poly r = gen::rotation(2, 0, 1, 1);
  CHECK(determinant(r) == Poly::identity(1));
  CHECK(inverse(r) * r == Poly::identity(2));
  const Poly m = Poly::identity(2) + Poly::constant(Matrix<QQi>::unit(2, 0, 1)).scaled_by(e(1));
  CHECK(adjugate(m * QQi(3)) * (m * QQi(3)) == Poly::identity(2).scaled_by(determinant(m * QQi(3))));
  CHECK(inverse(e(3, QQi(2))) == e(-3, QQi::ratio(1, 2)));
  CHECK_THROWS_AS(inverse(one() + e(1)), EllipticityError);
}

TEST_CASE("fourier cap and truncation") {
  const int cap = fourier_cap();
  set_fourier_cap(4);
  CHECK_THROWS_AS(e(3) * e(2), CapError);
  set_fourier_truncation(true);
  const Poly cut = (e(3) + e(0)) * (e(2) + e(0));
  CHECK(cut.truncated());
  CHECK(cut.J() <= 4);
  CHECK(cut.coeff(2) == Matrix<QQi>::identity(1));
  set_fourier_truncation(false);
  set_fourier_cap(cap);
  CHECK_FALSE((e(3) * e(2)).truncated());
}

TEST_CASE("xi derivative") {
  const Comp d1 = xi_derivative(xi_pow(1, one()));
  CHECK(d1 == Comp{0, one(), one()});
  const Comp d2 = xi_derivative(abs_pow(1, one()));
  CHECK(d2 == Comp{0, one(), -one()});
  const Comp d0 = xi_derivative(Comp{0, e(1), e(2)});
  CHECK(d0.degree == -1);
  CHECK(d0.is_zero());
}

TEST_CASE("xi derivative obeys the Leibniz rule") {
  Rng rng = trial_rng(21, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int da = static_cast<int>(uniform_int(rng, -3, 3));
    const int db = static_cast<int>(uniform_int(rng, -3, 3));
    const Comp a{da, gen::trig_poly(rng, 2, 2), gen::trig_poly(rng, 2, 2)};
    const Comp b{db, gen::trig_poly(rng, 2, 2), gen::trig_poly(rng, 2, 2)};
    CHECK(xi_derivative(a * b) == xi_derivative(a) * b + a * xi_derivative(b));
  }
}

TEST_CASE("composition examples") {
  const Sym xi = symbols::xi<QQi>(1, -3);
  const Sym ex = Sym::multiplication(e(1), -3);
  const Sym expected = sym(1, -2, {xi_pow(1, e(1)), xi_pow(0, e(1))});
  CHECK(compose(xi, ex) == expected);

  Rng rng = trial_rng(22, 0);
  const Sym a = gen::symbol(rng, 2, 1, 4, 2);
  CHECK(compose(a, Sym::multiplication(Poly::identity(2), -10)) == a);

  const Sym b = sym(-1, -4, {abs_pow(-1, e(1))});
  const Sym c = commutator(xi, b);
  CHECK(c.order() == 0);
  CHECK(c.component(0).is_zero());
  CHECK(c.component(-1) == abs_pow(-1, e(1)));
  for (int d = -2; d >= c.floor(); --d) CHECK(c.component(d).is_zero());
}

TEST_CASE("composition floors") {
  const Sym xi = symbols::xi<QQi>(1, -3);
  const Sym b = symbols::abs_xi_pow<QQi>(1, -1, -4);
  CHECK(compose_floor(xi, b) == -3);
  CHECK(compose(xi, b).floor() == -3);
  CHECK(compose(xi, b, 2).floor() == -2);
  CHECK_THROWS_AS(compose(xi, b, 4), PrecisionError);
  try {
    compose(xi, b, 4);
  } catch (const PrecisionError& err) {
    CHECK(err.attainable_floor() == -3);
  }
}

TEST_CASE("principal symbols multiply") {
  Rng rng = trial_rng(23, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 1, 3));
    const Sym a = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 3, 3);
    const Sym b = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 3, 3);
    const Sym ab = compose(a, b);
    CHECK(ab.order() == a.order() + b.order());
    CHECK(ab.principal() == a.principal() * b.principal());
  }
}

TEST_CASE("composition is associative to the common floor") {
  Rng rng = trial_rng(24, 0);
  for (int trial = 0; trial < 15; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 1, 2));
    const Sym a = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -1, 2)), 4, 2);
    const Sym b = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -1, 2)), 4, 2);
    const Sym c = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -1, 2)), 4, 2);
    const Sym left = compose(compose(a, b), c);
    const Sym right = compose(a, compose(b, c));
    const int floor = std::max(left.floor(), right.floor());
    CHECK(left.truncated(floor) == right.truncated(floor));
  }
}

TEST_CASE("composition matches operator action on the Fourier basis") {
  Rng rng = trial_rng(25, 0);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::DiffOp p, q;
    const int op = static_cast<int>(uniform_int(rng, 0, 2));
    const int oq = static_cast<int>(uniform_int(rng, 0, 2));
    for (int d = 0; d <= op; ++d) p.coeff[d] = gen::trig_poly(rng, 1, 3);
    for (int d = 0; d <= oq; ++d) q.coeff[d] = gen::trig_poly(rng, 1, 3);
    const Sym pq = compose(p.symbol(-4), q.symbol(-4), op + oq);
    for (int j = -8; j <= 8; ++j) {
      const Poly u = e(j);
      CHECK(apply_to_function(pq, u) == p.apply(q.apply(u)));
    }
  }
}

TEST_CASE("apply to function") {
  const Sym xi = symbols::xi<QQi>(1, 0);
  CHECK(apply_to_function(xi, e(5)) == e(5, QQi(5)));
  const Sym exi = sym(1, 0, {xi_pow(1, e(1))});
  CHECK(apply_to_function(exi, e(-3)) == e(-2, QQi(-3)));
  const Poly f = Poly::cos_nx(1);
  const Sym lap = sym(2, 0, {xi_pow(2, one()), xi_pow(0, f)});
  const Poly u = e(2) + e(-1, QQi(3));
  CHECK(apply_to_function(lap, u) == e(2, QQi(4)) + e(-1, QQi(3)) + f * u);
  CHECK_THROWS_AS(apply_to_function(symbols::abs_xi_pow<QQi>(1, 1, 0), u), UnsupportedOracleError);
  CHECK_THROWS_AS(apply_to_function(symbols::abs_xi_pow<QQi>(1, -1, -1), u), UnsupportedOracleError);
}

TEST_CASE("adjoint examples") {
  CHECK(adjoint(symbols::xi<QQi>(1, -3)) == symbols::xi<QQi>(1, -3));
  const Poly f = e(2, QQi(1, 3)) + e(-1, QQi(2));
  CHECK(adjoint(Sym::multiplication(f, -2)) == Sym::multiplication(f.adjoint(), -2));
  const Sym a = sym(1, -2, {xi_pow(1, e(1))});
  CHECK(adjoint(a) == sym(1, -2, {xi_pow(1, e(-1)), xi_pow(0, -e(-1))}));
}

TEST_CASE("adjoint is an involution and anti-multiplicative") {
  Rng rng = trial_rng(26, 0);
  for (int trial = 0; trial < 15; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 1, 3));
    const Sym a = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 4, 2);
    const Sym b = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 4, 2);
    CHECK(adjoint(adjoint(a)) == a);
    const Sym lhs = adjoint(compose(a, b));
    const Sym rhs = compose(adjoint(b), adjoint(a));
    const int floor = std::max(lhs.floor(), rhs.floor());
    CHECK(lhs.truncated(floor) == rhs.truncated(floor));
  }
}

TEST_CASE("left reduction") {
  const Sym xi = symbols::xi<QQi>(1, -3);
  const Poly f = Poly::sin_nx(2);
  CHECK(left_reduce(TwoPointSymbol<QQi>{{{f, xi, one()}}}).truncated(-2) ==
        compose(Sym::multiplication(f, -3), xi));
  const Sym r2 = left_reduce(TwoPointSymbol<QQi>{{{one(), xi, e(1)}}});
  CHECK(r2 == sym(1, -3, {xi_pow(1, e(1)), xi_pow(0, e(1))}));
  const Sym r3 = left_reduce(TwoPointSymbol<QQi>{{{e(1), xi, e(-1)}}});
  CHECK(r3 == sym(1, -3, {xi_pow(1, one()), xi_pow(0, -one())}));
  CHECK_THROWS_AS(left_reduce(TwoPointSymbol<QQi>{}), StructuralError);
}

TEST_CASE("change of frame examples") {
  Rng rng = trial_rng(27, 0);
  const Sym a = gen::symbol(rng, 2, 1, 4, 2);
  CHECK(change_of_frame(a, one(), Poly::identity(2)) == a);

  const Sym xi = symbols::xi<QQi>(1, -3);
  CHECK(change_of_frame(xi, e(1), Poly::identity(1)) == sym(1, -3, {xi_pow(1, one()), xi_pow(0, -one())}));

  const Poly r = gen::rotation(2, 0, 1, 1);
  const Sym xi2 = symbols::xi<QQi>(2, -3);
  const Poly corr = r * r.transpose().dx();
  Sym expected(2, 1, -3);
  expected.set_component(xi_pow(1, Poly::identity(2)));
  expected.set_component(Comp{0, corr, corr});
  CHECK(change_of_frame(xi2, one(), r) == expected);
}

TEST_CASE("change of frame checks its frame data") {
  const Sym xi = symbols::xi<QQi>(2, -3);
  CHECK_THROWS_AS(change_of_frame(xi, e(0, QQi(2)), Poly::identity(2)), PreconditionError);
  const Poly scaled = Poly::identity(2) * QQi(2);
  CHECK_THROWS_AS(change_of_frame(xi, one(), scaled), PreconditionError);
  Matrix<QQi> m = Matrix<QQi>::identity(2);
  m(1, 1) = QQi(-1);
  CHECK_THROWS_AS(change_of_frame(xi, one(), Poly::constant(m)), PreconditionError);
}

TEST_CASE("change of frame round trip") {
  Rng rng = trial_rng(28, 0);
  for (int trial = 0; trial < 15; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 2, 3));
    const Sym a = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 4, 2);
    const Poly g = gen::phase(static_cast<int>(uniform_int(rng, -2, 2)));
    const Poly phi = gen::random_rotation_frame(rng, k);
    const Sym b = change_of_frame(a, g, phi);
    CHECK(b.principal() == Comp{a.order(), phi * a.principal().plus * phi.transpose(),
                                phi * a.principal().minus * phi.transpose()});
    CHECK(change_of_frame(b, g.adjoint(), phi.transpose()) == a.truncated(b.floor()));
  }
}

TEST_CASE("symbol bookkeeping") {
  CHECK_THROWS_AS(Sym(1, 0, 1), StructuralError);
  CHECK_THROWS_AS(Sym(0, 0, 0), StructuralError);
  const Sym s = symbols::heaviside<QQi>(2, -3);
  CHECK_THROWS_AS(s.component(-4), PrecisionError);
  CHECK(s.component(1).is_zero());
  CHECK(s.with_order(2).component(0) == s.component(0));
  CHECK_THROWS_AS(s.truncated(-5), PrecisionError);
  CHECK(s.truncated(-1).floor() == -1);
  CHECK(s.depth() == 3);
}

TEST_CASE("float mode agrees with exact mode") {
  Rng rng = trial_rng(29, 0);
  const Sym a = gen::symbol(rng, 2, 1, 4, 2);
  const Sym b = gen::symbol(rng, 2, -1, 4, 2);
  const auto exact = compose(a, b).convert<C64>();
  const auto flt = compose(a.convert<C64>(), b.convert<C64>());
  CHECK((exact - flt).max_abs() <= 1e-12 * std::max(1.0, exact.max_abs()));
}
