#include "doctest.h"
#include "wreslab/generators.hpp"
#include "wreslab/residue.hpp"

using namespace wreslab;

namespace {

using Poly = TrigPoly<QQi>;
using Sym = ClassicalSymbol<QQi>;

Poly e(int j, QQi c = QQi(1)) { return Poly::scalar_monomial(j, c); }

}  // namespace

TEST_CASE("density examples") {
  CHECK(wres_density(symbols::signed_xi_pow<QQi>(1, -1, -1)).is_zero());
  CHECK(wres_density(symbols::abs_xi_pow<QQi>(3, -1, -2)) == e(0, QQi(6)));
  const Sym a = Sym::single({-1, e(1), e(1)}, -2);
  CHECK(wres_density(a) == e(1, QQi(2)));
}

TEST_CASE("residue examples") {
  CHECK(wres(symbols::abs_xi_pow<QQi>(1, -1, -1)) == QQi(2));
  CHECK(wres(Sym::single({-1, e(1), e(1)}, -2)).is_zero());
  const Sym c = commutator(symbols::xi<QQi>(1, -3), Sym::single({-1, e(1), e(1)}, -4));
  CHECK(wres_density(c) == e(1, QQi(2)));
  CHECK(wres(c).is_zero());
  const auto g = wres_geometric(symbols::abs_xi_pow<C64>(1, -1, -1));
  CHECK(std::abs(g - C64(4.0 * std::numbers::pi)) <= 1e-12);
}

TEST_CASE("residue needs the degree -1 component") {
  CHECK_THROWS_AS(wres(symbols::xi<QQi>(1, 0)), PrecisionError);
  CHECK_THROWS_AS(wres_density(symbols::heaviside<QQi>(2, 0)), PrecisionError);
  CHECK(wres(symbols::xi<QQi>(1, -1)).is_zero());
  CHECK(wres(symbols::abs_xi_pow<QQi>(1, -3, -3)).is_zero());
}

TEST_CASE("residue is linear and local") {
  Rng rng = trial_rng(31, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Sym a = gen::symbol(rng, 2, 1, 4, 3);
    const Sym b = gen::symbol(rng, 2, 1, 4, 3);
    const QQi s = gen::small_scalar(rng);
    CHECK(wres(a * s + b) == s * wres(a) + wres(b));
    Sym changed = a;
    changed.set_component({0, gen::trig_poly(rng, 2, 3), gen::trig_poly(rng, 2, 3)});
    changed.set_component({-2, gen::trig_poly(rng, 2, 3), gen::trig_poly(rng, 2, 3)});
    CHECK(wres_density(changed) == wres_density(a));
  }
}

TEST_CASE("residue vanishes on commutators") {
  Rng rng = trial_rng(32, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 1, 3));
    const Sym a = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 5, 4);
    const Sym b = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 5, 4);
    CHECK(wres(commutator(a, b)).is_zero());
    CHECK(std::abs(wres(commutator(a.convert<C64>(), b.convert<C64>()))) <= 1e-9);
  }
}

TEST_CASE("density is invariant under change of frame") {
  Rng rng = trial_rng(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = static_cast<int>(uniform_int(rng, 2, 3));
    const Sym a = gen::symbol(rng, k, static_cast<int>(uniform_int(rng, -2, 2)), 5, 3);
    const Poly g = gen::phase(static_cast<int>(uniform_int(rng, -2, 2)));
    const Poly phi = gen::random_rotation_frame(rng, k);
    CHECK(wres_density(change_of_frame(a, g, phi)) == wres_density(a));
  }
}
