#pragma once

// Test-side reference computations, written independently of the library kernels.

#include <map>
#include <vector>

#include "wreslab/symbol.hpp"

namespace oracle {

using wreslab::QQi;

/// Coefficients c_1..c_ell of x(y) with x^2 + x + y = 0, x(0) = 0, by successive substitution
/// x <- -y - x^2 on power series truncated at y^{ell+1}.
inline std::vector<QQi> substitution_series(int ell) {
  std::vector<QQi> x(static_cast<std::size_t>(ell + 1), QQi(0));
  for (int it = 0; it <= ell; ++it) {
    std::vector<QQi> next(x.size(), QQi(0));
    next[1] = QQi(-1);
    for (std::size_t a = 1; a < x.size(); ++a)
      for (std::size_t b = 1; a + b < x.size(); ++b) next[a + b] -= x[a] * x[b];
    x = std::move(next);
  }
  return {x.begin() + 1, x.end()};
}

/// Differential operator sum_d c_d(x) D^d (D = -i d/dx) given by scalar coefficient polynomials.
/// Values on e^{ijx}: sum_d j^d c_d(x) e^{ijx}.
struct DiffOp {
  std::map<int, wreslab::TrigPoly<QQi>> coeff;  // d -> c_d (k = 1)

  wreslab::TrigPoly<QQi> apply(const wreslab::TrigPoly<QQi>& u) const {
    wreslab::TrigPoly<QQi> out(1);
    for (int j = -u.J(); j <= u.J(); ++j) {
      const QQi uj = u.coeff(j)(0, 0);
      if (uj.is_zero()) continue;
      for (const auto& [d, c] : coeff) {
        QQi jd(1);
        for (int e = 0; e < d; ++e) jd *= QQi(j);
        out += c * wreslab::TrigPoly<QQi>::scalar_monomial(j, jd * uj);
      }
    }
    return out.trim();
  }

  /// The same operator as a classical symbol: component of degree d is c_d xi^d.
  wreslab::ClassicalSymbol<QQi> symbol(int floor) const {
    int order = 0;
    for (const auto& [d, c] : coeff) order = std::max(order, d);
    wreslab::ClassicalSymbol<QQi> s(1, order, floor);
    for (const auto& [d, c] : coeff) s.set_component({d, c, d % 2 == 0 ? c : -c});
    return s;
  }
};

}  // namespace oracle
