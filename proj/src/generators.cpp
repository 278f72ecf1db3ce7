#include "wreslab/generators.hpp"

namespace wreslab::gen {

namespace {

using Mat = Matrix<QQi>;
using Poly = TrigPoly<QQi>;

Mat unit(int k, int i, int j) {
  Mat m = Mat::zero(k);
  m(i, j) = QQi(1);
  return m;
}

std::pair<int, int> distinct_pair(Rng& rng, int k) {
  const int a = static_cast<int>(uniform_int(rng, 0, k - 1));
  int b = static_cast<int>(uniform_int(rng, 0, k - 2));
  if (b >= a) ++b;
  return {a, b};
}

Poly diagonal(const std::vector<int>& d) {
  const int k = static_cast<int>(d.size());
  Mat m = Mat::zero(k);
  for (int i = 0; i < k; ++i) m(i, i) = QQi(d[static_cast<std::size_t>(i)]);
  return Poly::constant(m);
}

std::vector<int> random_rank_pattern(Rng& rng, int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (auto& v : d) v = coin(rng) ? 1 : 0;
  return d;
}

/// Scalar polynomial from {e^{ix}, e^{-ix}, cos x, sin x} times a small scalar.
Poly random_scalar_mode(Rng& rng) {
  Poly f(1);
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      f = Poly::scalar_monomial(1, QQi(1));
      break;
    case 1:
      f = Poly::scalar_monomial(-1, QQi(1));
      break;
    case 2:
      f = Poly::cos_nx(1);
      break;
    default:
      f = Poly::sin_nx(1);
      break;
  }
  QQi c = small_scalar(rng);
  while (c.is_zero()) c = small_scalar(rng);
  return f * c;
}

struct Frame {
  Poly v;
  Poly v_inv;
};

Frame unipotent(int k, int i, int j, const Poly& f) {
  const Poly e = Poly::constant(unit(k, i, j));
  const Poly id = Poly::identity(k);
  const Poly fe = e.scaled_by(f);
  return {id + fe, id - fe};
}

}  // namespace

QQi small_scalar(Rng& rng) {
  const long d = uniform_int(rng, 1, 2);
  return {mpq_class(uniform_int(rng, -3, 3), d), mpq_class(uniform_int(rng, -3, 3), d)};
}

Poly trig_poly(Rng& rng, int k, int J, int modes) {
  Poly out(k);
  const int count = static_cast<int>(uniform_int(rng, 1, std::max(1, modes)));
  for (int n = 0; n < count; ++n) {
    const int j = static_cast<int>(uniform_int(rng, -J, J));
    Mat m = out.coeff(j);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        if (coin(rng)) m(r, c) = small_scalar(rng);
    out.set_coeff(j, m);
  }
  return out.trim();
}

ClassicalSymbol<QQi> symbol(Rng& rng, int k, int order, int depth, int J) {
  ClassicalSymbol<QQi> s(k, order, order - depth);
  for (int d = order; d >= order - depth; --d) {
    if (uniform_int(rng, 0, 3) == 0) continue;
    s.set_component({d, trig_poly(rng, k, J, 2), trig_poly(rng, k, J, 2)});
  }
  return s;
}

ClassicalSymbol<QQi> junk(Rng& rng, int k, int floor) {
  ClassicalSymbol<QQi> s(k, -1, std::min(floor, -1));
  for (int d = -1; d >= s.floor(); --d) {
    if (d < -1 && coin(rng)) continue;
    s.set_component({d, trig_poly(rng, k, 1, 1), trig_poly(rng, k, 1, 1)});
  }
  return s;
}

ClassicalSymbol<QQi> differential_symbol(Rng& rng, int k, int order, int floor, int J) {
  ClassicalSymbol<QQi> s(k, order, std::min(floor, 0));
  for (int d = order; d >= 0; --d) {
    const Poly c = trig_poly(rng, k, J, 3);
    s.set_component({d, c, d % 2 == 0 ? c : -c});
  }
  return s;
}

Poly rotation(int k, int a, int b, int n) {
  std::vector<std::vector<Poly>> e(static_cast<std::size_t>(k), std::vector<Poly>(static_cast<std::size_t>(k), Poly(1)));
  for (int i = 0; i < k; ++i) e[i][i] = Poly::scalar_monomial(0, QQi(1));
  e[a][a] = Poly::cos_nx(n);
  e[b][b] = Poly::cos_nx(n);
  e[a][b] = -Poly::sin_nx(n);
  e[b][a] = Poly::sin_nx(n);
  return Poly::from_entries(e);
}

Poly phase(int n) { return Poly::scalar_monomial(n, QQi(1)); }

Poly random_rotation_frame(Rng& rng, int k) {
  if (k == 1) return Poly::identity(1);
  Poly out = Poly::identity(k);
  const int count = k > 2 ? static_cast<int>(uniform_int(rng, 1, 2)) : 1;
  for (int i = 0; i < count; ++i) {
    const auto [a, b] = distinct_pair(rng, k);
    out = out * rotation(k, a, b, coin(rng) ? 1 : -1);
  }
  return out;
}

PrincipalProjection<QQi> random_principal(Rng& rng, int k) {
  const Poly dp = diagonal(random_rank_pattern(rng, k));
  const Poly dm = diagonal(random_rank_pattern(rng, k));
  if (k == 1) return {dp, dm};

  // Constant unipotent G and an x-dependent factor U.
  const auto [gi, gj] = distinct_pair(rng, k);
  QQi gc = small_scalar(rng);
  const Frame g = unipotent(k, gi, gj, Poly::scalar_monomial(0, gc));
  Frame u;
  if (coin(rng)) {
    const auto [a, b] = distinct_pair(rng, k);
    const Poly r = rotation(k, a, b, 1);
    u = {r, r.adjoint()};
  } else {
    const auto [a, b] = distinct_pair(rng, k);
    u = unipotent(k, a, b, random_scalar_mode(rng));
  }
  const Poly v = u.v * g.v;
  const Poly v_inv = g.v_inv * u.v_inv;
  return {v * dp * v_inv, v * dm * v_inv};
}

PrincipalProjection<QQi> random_self_adjoint_principal(Rng& rng, int k) {
  const Poly dp = diagonal(random_rank_pattern(rng, k));
  const Poly dm = diagonal(random_rank_pattern(rng, k));
  if (k == 1) return {dp, dm};
  const auto [a, b] = distinct_pair(rng, k);
  const Poly r = rotation(k, a, b, coin(rng) ? 1 : -1);
  const Poly rt = r.adjoint();
  return {r * dp * rt, r * dm * rt};
}

MatrixJet<QQi> random_jet(Rng& rng, int k, int n_levels, int start_level) {
  MatrixJet<QQi> out(k, n_levels);
  for (int j = start_level; j < n_levels; ++j) {
    Mat m = Mat::zero(k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        if (coin(rng)) m(r, c) = small_scalar(rng);
    out.set_coeff(j, m);
  }
  return out;
}

MatrixJet<QQi> random_unit_jet(Rng& rng, int k, int n_levels) {
  Mat g = Mat::identity(k);
  if (k > 1) {
    const auto [i, j] = distinct_pair(rng, k);
    g(i, j) = small_scalar(rng);
  }
  const auto one = MatrixJet<QQi>::identity(k, n_levels);
  return MatrixJet<QQi>::constant(g, n_levels) * (one + random_jet(rng, k, n_levels, 1));
}

MatrixJet<QQi> random_idempotent_jet(Rng& rng, int k, int n_levels, int rank) {
  if (rank < 0 || rank > k) throw StructuralError("random_idempotent_jet: rank out of range");
  Mat d = Mat::zero(k);
  for (int i = 0; i < rank; ++i) d(i, i) = QQi(1);
  const auto v = random_unit_jet(rng, k, n_levels);
  return v * MatrixJet<QQi>::constant(d, n_levels) * v.inverse();
}

Poly sigma(int which) {
  Mat m = Mat::zero(2);
  switch (which) {
    case 1:
      m(0, 1) = QQi(1);
      m(1, 0) = QQi(1);
      break;
    case 2:
      m(0, 1) = -QQi::i();
      m(1, 0) = QQi::i();
      break;
    case 3:
      m(0, 0) = QQi(1);
      m(1, 1) = QQi(-1);
      break;
    default:
      throw StructuralError("sigma: index must be 1, 2 or 3");
  }
  return Poly::constant(m);
}

PrincipalProjection<QQi> winding_family() {
  const Poly id = Poly::identity(2);
  const Poly c = sigma(3).scaled_by(Poly::cos_nx(1));
  const Poly s = sigma(1).scaled_by(Poly::sin_nx(1));
  const QQi half = QQi::ratio(1, 2);
  return {(id + c + s) * half, (id + c - s) * half};
}

PrincipalProjection<QQi> szego(int k) { return {Poly::identity(k), Poly(k)}; }

FirstOrderSystem random_first_order_system(Rng& rng, int k) {
  if (k < 1) throw StructuralError("random_first_order_system: k must be positive");
  Poly base(k);
  if (k == 2) {
    const int n = static_cast<int>(uniform_int(rng, 0, 2));
    // sigma_3 (n = 0) or the winding generator, both squaring to I.
    base = n == 0 ? sigma(3) : sigma(3).scaled_by(Poly::cos_nx(n)) + sigma(1).scaled_by(Poly::sin_nx(n));
  } else {
    std::vector<int> signs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) signs[static_cast<std::size_t>(i)] = i % 2 == 0 ? 1 : -1;
    const Poly r = random_rotation_frame(rng, k);
    base = r * diagonal(signs) * r.adjoint();
  }
  const Poly m = trig_poly(rng, k, 1, 3);
  const Poly h = m + m.adjoint();
  TrigPoly<C64> hf = h.convert<C64>();
  const double hnorm = std::max(1.0, grid_max_abs(hf, 64));
  // Operator norm of the perturbation stays below 0.15, so |eigenvalues| >= 0.85.
  const double eps = 0.15 * uniform_unit(rng) / (k * hnorm);
  const Poly mb = trig_poly(rng, k, 2, 3);
  return {base.convert<C64>() + hf * C64(eps), (mb + mb.adjoint()).convert<C64>()};
}

ClassicalSymbol<C64> spectral_seed(const FirstOrderSystem& sys, const PrincipalProjection<C64>& p, int depth) {
  auto x = embed(p, depth);
  if (depth < 1) return x;
  const auto id = TrigPoly<C64>::identity(p.k());
  auto off = [&](const TrigPoly<C64>& q) {
    const auto r = id - q;
    return (q * sys.b * r + r * sys.b * q) * C64(0.5);
  };
  ClassicalSymbol<C64> t(p.k(), 0, -depth);
  t.set_component({-1, off(p.plus), off(p.minus)});
  return x + t;
}

}  // namespace wreslab::gen
