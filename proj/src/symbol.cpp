#include "wreslab/symbol.hpp"

#include <algorithm>
#include <string>

namespace wreslab {

namespace {

template <class S>
HomComponent<S> left_mul(const TrigPoly<S>& f, const HomComponent<S>& c) {
  return {c.degree, f * c.plus, f * c.minus};
}

template <class S>
HomComponent<S> right_mul(const HomComponent<S>& c, const TrigPoly<S>& f) {
  return {c.degree, c.plus * f, c.minus * f};
}

template <class S>
bool close_to_identity(const TrigPoly<S>& p) {
  if constexpr (Field<S>::exact) {
    return p.is_identity();
  } else {
    return (p - TrigPoly<S>::identity(p.k())).near_zero(1e-10);
  }
}

}  // namespace

int detail::resolve_floor(int order, int attainable, std::optional<int> depth, const char* op) {
  if (!depth) return attainable;
  if (*depth < 0) throw StructuralError(std::string(op) + ": depth must be non-negative");
  const int floor = order - *depth;
  if (floor < attainable)
    throw PrecisionError(std::string(op) + ": requested floor " + std::to_string(floor) +
                             " lies below the attainable floor " + std::to_string(attainable),
                         attainable);
  return floor;
}

// ---------------------------------------------------------------------------
// HomComponent

template <class S>
HomComponent<S>::HomComponent(int d, TrigPoly<S> p, TrigPoly<S> m)
    : degree(d), plus(std::move(p)), minus(std::move(m)) {
  if (plus.k() != minus.k()) throw StructuralError("HomComponent: plus/minus dimension mismatch");
}

template <class S>
HomComponent<S>& HomComponent<S>::operator+=(const HomComponent& o) {
  if (degree != o.degree) throw StructuralError("HomComponent +: degree mismatch");
  plus += o.plus;
  minus += o.minus;
  return *this;
}

template <class S>
HomComponent<S>& HomComponent<S>::operator-=(const HomComponent& o) {
  if (degree != o.degree) throw StructuralError("HomComponent -: degree mismatch");
  plus -= o.plus;
  minus -= o.minus;
  return *this;
}

template <class S>
HomComponent<S>& HomComponent<S>::operator*=(const S& s) {
  plus *= s;
  minus *= s;
  return *this;
}

template <class S>
HomComponent<S> xi_derivative(const HomComponent<S>& c) {
  using F = Field<S>;
  const S d = F::from_int(c.degree);
  return {c.degree - 1, c.plus * d, c.minus * (-d)};
}

// ---------------------------------------------------------------------------
// ClassicalSymbol

template <class S>
ClassicalSymbol<S>::ClassicalSymbol(int k, int order, int floor) : k_(k), order_(order), floor_(floor) {
  if (k < 1) throw StructuralError("ClassicalSymbol: matrix dimension must be positive");
  if (floor > order) throw StructuralError("ClassicalSymbol: floor above order");
  comps_.reserve(static_cast<std::size_t>(order - floor + 1));
  for (int d = order; d >= floor; --d) comps_.push_back(Component::zero(k, d));
}

template <class S>
ClassicalSymbol<S> ClassicalSymbol<S>::multiplication(const TrigPoly<S>& f, int floor) {
  return single(Component{0, f, f}, std::min(floor, 0));
}

template <class S>
ClassicalSymbol<S> ClassicalSymbol<S>::single(const Component& c, int floor) {
  ClassicalSymbol s(c.k(), c.degree, std::min(floor, c.degree));
  s.set_component(c);
  return s;
}

template <class S>
HomComponent<S> ClassicalSymbol<S>::component(int d) const {
  if (d < floor_)
    throw PrecisionError("degree " + std::to_string(d) + " component not determined (floor " +
                             std::to_string(floor_) + ")",
                         floor_);
  if (d > order_) return Component::zero(k_, d);
  return comps_[index(d)];
}

template <class S>
const HomComponent<S>* ClassicalSymbol<S>::find(int d) const {
  if (d < floor_ || d > order_) return nullptr;
  return &comps_[index(d)];
}

template <class S>
void ClassicalSymbol<S>::set_component(const Component& c) {
  if (c.k() != k_) throw StructuralError("ClassicalSymbol: component dimension mismatch");
  if (c.degree > order_ || c.degree < floor_)
    throw StructuralError("ClassicalSymbol: component degree " + std::to_string(c.degree) + " outside [" +
                          std::to_string(floor_) + ", " + std::to_string(order_) + "]");
  comps_[index(c.degree)] = c;
}

template <class S>
void ClassicalSymbol<S>::add_to_component(const Component& c) {
  if (c.degree > order_ || c.degree < floor_)
    throw StructuralError("ClassicalSymbol: component degree outside range");
  comps_[index(c.degree)] += c;
}

template <class S>
bool ClassicalSymbol<S>::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Component& c) { return c.is_zero(); });
}

template <class S>
bool ClassicalSymbol<S>::near_zero(double tol) const {
  return std::all_of(comps_.begin(), comps_.end(), [tol](const Component& c) { return c.near_zero(tol); });
}

template <class S>
double ClassicalSymbol<S>::max_abs() const {
  double m = 0.0;
  for (const auto& c : comps_) m = std::max({m, c.plus.max_abs(), c.minus.max_abs()});
  return m;
}

template <class S>
ClassicalSymbol<S> ClassicalSymbol<S>::truncated(int new_floor) const {
  if (new_floor < floor_)
    throw PrecisionError("truncated: new floor below current floor " + std::to_string(floor_), floor_);
  ClassicalSymbol out(k_, order_, std::min(new_floor, order_));
  for (int d = order_; d >= out.floor_; --d) out.comps_[out.index(d)] = comps_[index(d)];
  return out;
}

template <class S>
ClassicalSymbol<S> ClassicalSymbol<S>::with_order(int new_order) const {
  if (new_order < order_) throw StructuralError("with_order: cannot lower the order");
  ClassicalSymbol out(k_, new_order, floor_);
  for (const auto& c : comps_) out.comps_[out.index(c.degree)] = c;
  return out;
}

template <class S>
ClassicalSymbol<S>& ClassicalSymbol<S>::operator+=(const ClassicalSymbol& o) {
  if (k_ != o.k_) throw StructuralError("ClassicalSymbol +: dimension mismatch");
  ClassicalSymbol out(k_, std::max(order_, o.order_), std::max(floor_, o.floor_));
  for (int d = out.order_; d >= out.floor_; --d) {
    auto& slot = out.comps_[out.index(d)];
    if (const auto* c = find(d)) slot += *c;
    if (const auto* c = o.find(d)) slot += *c;
  }
  *this = std::move(out);
  return *this;
}

template <class S>
ClassicalSymbol<S>& ClassicalSymbol<S>::operator-=(const ClassicalSymbol& o) {
  if (k_ != o.k_) throw StructuralError("ClassicalSymbol -: dimension mismatch");
  ClassicalSymbol out(k_, std::max(order_, o.order_), std::max(floor_, o.floor_));
  for (int d = out.order_; d >= out.floor_; --d) {
    auto& slot = out.comps_[out.index(d)];
    if (const auto* c = find(d)) slot += *c;
    if (const auto* c = o.find(d)) slot -= *c;
  }
  *this = std::move(out);
  return *this;
}

template <class S>
ClassicalSymbol<S>& ClassicalSymbol<S>::operator*=(const S& s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

template <class S>
bool ClassicalSymbol<S>::equals(const ClassicalSymbol& o) const {
  if (k_ != o.k_ || order_ != o.order_ || floor_ != o.floor_) return false;
  for (std::size_t i = 0; i < comps_.size(); ++i)
    if (!(comps_[i] == o.comps_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Calculus

template <class S>
ClassicalSymbol<S> compose(const ClassicalSymbol<S>& a, const ClassicalSymbol<S>& b, std::optional<int> depth) {
  using F = Field<S>;
  if (a.k() != b.k()) throw StructuralError("compose: dimension mismatch");
  const int order = a.order() + b.order();
  const int floor = detail::resolve_floor(order, compose_floor(a, b), depth, "compose");
  ClassicalSymbol<S> out(a.k(), order, floor);

  // D_x^g b_j for every stored j, extended lazily.
  std::vector<std::vector<HomComponent<S>>> dxb(static_cast<std::size_t>(b.depth() + 1));

  for (int i = a.order(); i >= a.floor(); --i) {
    const auto* ai = a.find(i);
    if (ai->is_zero()) continue;
    for (int j = b.order(); j >= b.floor() && i + j >= floor; --j) {
      const auto* bj = b.find(j);
      if (bj->is_zero()) continue;
      auto& chain = dxb[static_cast<std::size_t>(b.order() - j)];
      if (chain.empty()) chain.push_back(*bj);
      HomComponent<S> da = *ai;
      S inv_fact = S(1);
      for (int g = 0; i + j - g >= floor; ++g) {
        if (g > 0) {
          da = xi_derivative(da);
          inv_fact = inv_fact / F::from_int(g);
          if (static_cast<int>(chain.size()) <= g) chain.push_back(chain.back().dx());
        }
        const auto& db = chain[static_cast<std::size_t>(g)];
        if (da.is_zero() || db.is_zero()) break;
        HomComponent<S> term = da * db;
        if (g > 1) term *= inv_fact;
        out.add_to_component(term);
      }
    }
  }
  return out;
}

template <class S>
ClassicalSymbol<S> commutator(const ClassicalSymbol<S>& a, const ClassicalSymbol<S>& b, std::optional<int> depth) {
  return compose(a, b, depth) - compose(b, a, depth);
}

template <class S>
ClassicalSymbol<S> adjoint(const ClassicalSymbol<S>& a, std::optional<int> depth) {
  using F = Field<S>;
  const int floor = detail::resolve_floor(a.order(), a.floor(), depth, "adjoint");
  ClassicalSymbol<S> out(a.k(), a.order(), floor);
  for (int i = a.order(); i >= floor; --i) {
    const auto* ai = a.find(i);
    if (ai->is_zero()) continue;
    HomComponent<S> c = ai->adjoint();
    S inv_fact = S(1);
    for (int g = 0; i - g >= floor; ++g) {
      if (g > 0) {
        c = xi_derivative(c.dx());
        inv_fact = inv_fact / F::from_int(g);
      }
      if (c.is_zero()) break;
      out.add_to_component(g > 1 ? c * inv_fact : c);
    }
  }
  return out;
}

template <class S>
ClassicalSymbol<S> left_reduce(const TwoPointSymbol<S>& a, std::optional<int> depth) {
  using F = Field<S>;
  if (a.terms.empty()) throw StructuralError("left_reduce: empty two-point symbol");
  const int k = a.terms.front().core.k();
  int order = a.terms.front().core.order();
  int attainable = a.terms.front().core.floor();
  for (const auto& t : a.terms) {
    if (t.core.k() != k || t.left.k() != k || t.right.k() != k)
      throw StructuralError("left_reduce: dimension mismatch");
    order = std::max(order, t.core.order());
    attainable = std::max(attainable, t.core.floor());
  }
  const int floor = detail::resolve_floor(order, attainable, depth, "left_reduce");
  ClassicalSymbol<S> out(k, order, floor);
  for (const auto& t : a.terms) {
    for (int i = t.core.order(); i >= floor; --i) {
      const auto* ci = t.core.find(i);
      if (ci->is_zero()) continue;
      HomComponent<S> c = left_mul(t.left, *ci);
      TrigPoly<S> r = t.right;
      S inv_fact = S(1);
      for (int g = 0; i - g >= floor; ++g) {
        if (g > 0) {
          c = xi_derivative(c);
          r = r.dx();
          inv_fact = inv_fact / F::from_int(g);
        }
        if (c.is_zero() || r.is_zero()) break;
        HomComponent<S> term = right_mul(c, r);
        if (g > 1) term *= inv_fact;
        out.add_to_component(term);
      }
    }
  }
  return out;
}

template <class S>
ClassicalSymbol<S> change_of_frame(const ClassicalSymbol<S>& a, const TrigPoly<S>& g, const TrigPoly<S>& phi,
                                   std::optional<int> depth) {
  if (g.k() != 1) throw StructuralError("change_of_frame: g must be scalar");
  if (phi.k() != a.k()) throw StructuralError("change_of_frame: phi dimension mismatch");
  const TrigPoly<S> g_inv = g.adjoint();
  if (!close_to_identity(g * g_inv)) throw PreconditionError("change_of_frame: g is not unimodular");
  const TrigPoly<S> phi_inv = phi.adjoint();
  if (!close_to_identity(phi * phi_inv)) throw PreconditionError("change_of_frame: phi is not unitary");
  if (!close_to_identity(determinant(phi))) throw PreconditionError("change_of_frame: det phi is not 1");
  TwoPointSymbol<S> two;
  two.terms.push_back({phi.scaled_by(g), a, phi_inv.scaled_by(g_inv)});
  return left_reduce(two, depth);
}

template <class S>
TrigPoly<S> apply_to_function(const ClassicalSymbol<S>& a, const TrigPoly<S>& u) {
  if (u.k() != a.k()) throw StructuralError("apply_to_function: dimension mismatch");
  if (a.floor() > 0 && a.order() >= 0)
    throw UnsupportedOracleError("apply_to_function: degree-0 component not determined");
  TrigPoly<S> out(a.k());
  for (int d = a.order(); d >= a.floor(); --d) {
    const auto* c = a.find(d);
    if (d < 0) {
      if (!c->is_zero())
        throw UnsupportedOracleError("apply_to_function: symbol has a nonzero component of negative degree");
      continue;
    }
    const bool even = d % 2 == 0;
    if (!(even ? c->minus == c->plus : c->minus == -c->plus))
      throw UnsupportedOracleError("apply_to_function: degree " + std::to_string(d) +
                                   " component does not extend to a polynomial in xi");
    if (c->is_zero()) continue;
    TrigPoly<S> du = u;
    for (int n = 0; n < d; ++n) du = du.dx();
    out += c->plus * du;
  }
  return out;
}

namespace symbols {

template <class S>
ClassicalSymbol<S> xi(int k, int floor) {
  const auto id = TrigPoly<S>::identity(k);
  return ClassicalSymbol<S>::single({1, id, -id}, floor);
}

template <class S>
ClassicalSymbol<S> abs_xi_pow(int k, int d, int floor) {
  const auto id = TrigPoly<S>::identity(k);
  return ClassicalSymbol<S>::single({d, id, id}, floor);
}

template <class S>
ClassicalSymbol<S> signed_xi_pow(int k, int d, int floor) {
  const auto id = TrigPoly<S>::identity(k);
  return ClassicalSymbol<S>::single({d, id, -id}, floor);
}

template <class S>
ClassicalSymbol<S> heaviside(int k, int floor) {
  return ClassicalSymbol<S>::single({0, TrigPoly<S>::identity(k), TrigPoly<S>(k)}, floor);
}

}  // namespace symbols

#define WRESLAB_INSTANTIATE(S)                                                                          \
  template struct HomComponent<S>;                                                                      \
  template class ClassicalSymbol<S>;                                                                    \
  template HomComponent<S> xi_derivative(const HomComponent<S>&);                                       \
  template ClassicalSymbol<S> compose(const ClassicalSymbol<S>&, const ClassicalSymbol<S>&,             \
                                      std::optional<int>);                                              \
  template ClassicalSymbol<S> commutator(const ClassicalSymbol<S>&, const ClassicalSymbol<S>&,          \
                                         std::optional<int>);                                           \
  template ClassicalSymbol<S> adjoint(const ClassicalSymbol<S>&, std::optional<int>);                   \
  template ClassicalSymbol<S> left_reduce(const TwoPointSymbol<S>&, std::optional<int>);                \
  template ClassicalSymbol<S> change_of_frame(const ClassicalSymbol<S>&, const TrigPoly<S>&,            \
                                              const TrigPoly<S>&, std::optional<int>);                  \
  template TrigPoly<S> apply_to_function(const ClassicalSymbol<S>&, const TrigPoly<S>&);                \
  template ClassicalSymbol<S> symbols::xi(int, int);                                                    \
  template ClassicalSymbol<S> symbols::abs_xi_pow(int, int, int);                                       \
  template ClassicalSymbol<S> symbols::signed_xi_pow(int, int, int);                                    \
  template ClassicalSymbol<S> symbols::heaviside(int, int);

WRESLAB_INSTANTIATE(QQi)
WRESLAB_INSTANTIATE(C64)

#undef WRESLAB_INSTANTIATE

}  // namespace wreslab
