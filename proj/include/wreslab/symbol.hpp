#pragma once

// Classical pseudodifferential symbols on the circle.
//
// Cotangent fibres are one-dimensional, so a component homogeneous of degree d is
// determined by its two values on the co-sphere {xi = +1, xi = -1}:
//
//   a_d(x, xi) = plus(x) * xi^d        for xi > 0,
//   a_d(x, xi) = minus(x) * (-xi)^d    for xi < 0.
//
// A ClassicalSymbol stores components for degrees order, order-1, ..., floor. The
// floor is the lowest degree that is trusted: everything below it is unknown, and
// every operation computes the tightest floor its inputs determine. Requesting a
// depth below that floor raises PrecisionError rather than returning junk.
//
// Operations take an optional `depth`, the number of one-step levels kept below the
// result's order (result floor = order - depth). Without it the attainable floor is used.

#include <map>
#include <optional>
#include <vector>

#include "wreslab/trig_poly.hpp"

namespace wreslab {

template <class S>
struct HomComponent {
  int degree = 0;
  TrigPoly<S> plus;
  TrigPoly<S> minus;

  HomComponent() = default;
  HomComponent(int d, TrigPoly<S> p, TrigPoly<S> m);
  static HomComponent zero(int k, int d) { return {d, TrigPoly<S>(k), TrigPoly<S>(k)}; }

  int k() const { return plus.k(); }
  bool is_zero() const { return plus.is_zero() && minus.is_zero(); }
  bool near_zero(double tol = Field<S>::tolerance) const { return plus.near_zero(tol) && minus.near_zero(tol); }

  HomComponent& operator+=(const HomComponent& o);
  HomComponent& operator-=(const HomComponent& o);
  HomComponent& operator*=(const S& s);
  friend HomComponent operator+(HomComponent a, const HomComponent& b) { return a += b; }
  friend HomComponent operator-(HomComponent a, const HomComponent& b) { return a -= b; }
  friend HomComponent operator*(HomComponent a, const S& s) { return a *= s; }
  friend bool operator==(const HomComponent& a, const HomComponent& b) {
    return a.degree == b.degree && a.plus == b.plus && a.minus == b.minus;
  }

  /// Pointwise product in (x, xi); degrees add.
  friend HomComponent operator*(const HomComponent& a, const HomComponent& b) {
    return {a.degree + b.degree, a.plus * b.plus, a.minus * b.minus};
  }

  /// D_x on both co-sphere values.
  HomComponent dx() const { return {degree, plus.dx(), minus.dx()}; }
  /// Pointwise conjugate transpose (xi is real).
  HomComponent adjoint() const { return {degree, plus.adjoint(), minus.adjoint()}; }

  template <class T>
  HomComponent<T> convert() const {
    return {degree, plus.template convert<T>(), minus.template convert<T>()};
  }
};

/// d/dxi of a homogeneous component: degree d -> d-1, (plus, minus) -> (d plus, -d minus).
template <class S>
HomComponent<S> xi_derivative(const HomComponent<S>& c);

template <class S>
class ClassicalSymbol {
 public:
  using F = Field<S>;
  using Component = HomComponent<S>;

  /// Zero symbol of the given order whose components are trusted down to `floor`.
  ClassicalSymbol(int k, int order, int floor);

  /// Pure multiplication operator f(x), trusted down to `floor` (<= 0).
  static ClassicalSymbol multiplication(const TrigPoly<S>& f, int floor);
  /// One homogeneous component, all other trusted degrees zero.
  static ClassicalSymbol single(const Component& c, int floor);

  int k() const noexcept { return k_; }
  int order() const noexcept { return order_; }
  int floor() const noexcept { return floor_; }
  int depth() const noexcept { return order_ - floor_; }

  /// Component of degree d. Zero above the order; PrecisionError below the floor.
  Component component(int d) const;
  /// Stored component of degree d, or nullptr when d lies outside [floor, order].
  const Component* find(int d) const;
  void set_component(const Component& c);
  void add_to_component(const Component& c);
  const Component& principal() const { return comps_.front(); }

  bool is_zero() const;
  bool near_zero(double tol = F::tolerance) const;
  /// Largest coefficient magnitude over all components.
  double max_abs() const;

  /// Same symbol with components below the new floor dropped.
  ClassicalSymbol truncated(int new_floor) const;
  /// Reinterpret with a higher order (extra zero top components).
  ClassicalSymbol with_order(int new_order) const;

  ClassicalSymbol& operator+=(const ClassicalSymbol& o);
  ClassicalSymbol& operator-=(const ClassicalSymbol& o);
  ClassicalSymbol& operator*=(const S& s);
  friend ClassicalSymbol operator+(ClassicalSymbol a, const ClassicalSymbol& b) { return a += b; }
  friend ClassicalSymbol operator-(ClassicalSymbol a, const ClassicalSymbol& b) { return a -= b; }
  friend ClassicalSymbol operator*(ClassicalSymbol a, const S& s) { return a *= s; }
  friend ClassicalSymbol operator*(const S& s, ClassicalSymbol a) { return a *= s; }

  /// Equality of order, floor and every component.
  friend bool operator==(const ClassicalSymbol& a, const ClassicalSymbol& b) { return a.equals(b); }
  friend bool operator!=(const ClassicalSymbol& a, const ClassicalSymbol& b) { return !a.equals(b); }

  template <class T>
  ClassicalSymbol<T> convert() const {
    ClassicalSymbol<T> out(k_, order_, floor_);
    for (const auto& c : comps_) out.set_component(c.template convert<T>());
    return out;
  }

 private:
  bool equals(const ClassicalSymbol& o) const;
  std::size_t index(int d) const { return static_cast<std::size_t>(order_ - d); }

  int k_;
  int order_;
  int floor_;
  std::vector<Component> comps_;  // comps_[i] has degree order_ - i
};

/// Sum of terms left(x) * core(x, xi) * right(y).
template <class S>
struct TwoPointTerm {
  TrigPoly<S> left;
  ClassicalSymbol<S> core;
  TrigPoly<S> right;
};

template <class S>
struct TwoPointSymbol {
  std::vector<TwoPointTerm<S>> terms;
};

/// Left symbol of the composition a o b:  sum_g (1/g!) d_xi^g a * D_x^g b.
template <class S>
ClassicalSymbol<S> compose(const ClassicalSymbol<S>& a, const ClassicalSymbol<S>& b,
                           std::optional<int> depth = std::nullopt);

/// a # b - b # a.
template <class S>
ClassicalSymbol<S> commutator(const ClassicalSymbol<S>& a, const ClassicalSymbol<S>& b,
                              std::optional<int> depth = std::nullopt);

/// Formal adjoint:  sum_g (1/g!) d_xi^g D_x^g (a^dagger).
template <class S>
ClassicalSymbol<S> adjoint(const ClassicalSymbol<S>& a, std::optional<int> depth = std::nullopt);

/// Reduction of an (x, y)-symbol to a left symbol:  sum_g (1/g!) d_xi^g D_y^g a(x, y, xi)|_{y=x}.
template <class S>
ClassicalSymbol<S> left_reduce(const TwoPointSymbol<S>& a, std::optional<int> depth = std::nullopt);

/// Symbol of the same operator in a frame related by lambda(x, y) = g(x)/g(y) and phi(x):
///   sum_g (1/g!) d_xi^g D_y^g [ g(x) g(y)^{-1} phi(x) a(x, xi) phi(y)^{-1} ]_{y=x}.
/// g must be unimodular and phi special unitary; both are checked.
template <class S>
ClassicalSymbol<S> change_of_frame(const ClassicalSymbol<S>& a, const TrigPoly<S>& g, const TrigPoly<S>& phi,
                                   std::optional<int> depth = std::nullopt);

/// Exact action of a differential (polynomial-in-xi) symbol on a trigonometric polynomial:
///   (A u)(x) = sum_j e^{ijx} a(x, j) u_j.
/// Throws UnsupportedOracleError when the symbol does not extend to a polynomial in xi.
template <class S>
TrigPoly<S> apply_to_function(const ClassicalSymbol<S>& a, const TrigPoly<S>& u);

namespace detail {
/// Floor for a result of the given order: `attainable` without a depth, order - depth otherwise.
/// PrecisionError when the requested floor lies below the attainable one.
int resolve_floor(int order, int attainable, std::optional<int> depth, const char* op);
}  // namespace detail

/// Attainable floor of a # b.
template <class S>
int compose_floor(const ClassicalSymbol<S>& a, const ClassicalSymbol<S>& b) {
  return std::max(a.floor() + b.order(), a.order() + b.floor());
}

// Common symbols, each trusted down to `floor`.
namespace symbols {
/// xi * I_k.
template <class S>
ClassicalSymbol<S> xi(int k, int floor);
/// |xi|^d * I_k.
template <class S>
ClassicalSymbol<S> abs_xi_pow(int k, int d, int floor);
/// sign(xi) |xi|^d * I_k, which is xi^d for odd d.
template <class S>
ClassicalSymbol<S> signed_xi_pow(int k, int d, int floor);
/// Heaviside H(xi) * I_k: the Szego projection symbol.
template <class S>
ClassicalSymbol<S> heaviside(int k, int floor);
}  // namespace symbols

extern template struct HomComponent<QQi>;
extern template struct HomComponent<C64>;
extern template class ClassicalSymbol<QQi>;
extern template class ClassicalSymbol<C64>;

}  // namespace wreslab
