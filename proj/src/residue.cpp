#include "wreslab/residue.hpp"

#include <numbers>

namespace wreslab {

template <class S>
TrigPoly<S> wres_density(const ClassicalSymbol<S>& a) {
  if (a.floor() > -1)
    throw PrecisionError("wres: degree -1 component not determined (floor " + std::to_string(a.floor()) + ")",
                         a.floor());
  const auto* c = a.find(-1);
  if (!c) return TrigPoly<S>(1);
  return c->plus.trace() + c->minus.trace();
}

template <class S>
S wres(const ClassicalSymbol<S>& a) {
  return wres_density(a).mean();
}

C64 wres_geometric(const ClassicalSymbol<C64>& a) { return 2.0 * std::numbers::pi * wres(a); }

template TrigPoly<QQi> wres_density(const ClassicalSymbol<QQi>&);
template TrigPoly<C64> wres_density(const ClassicalSymbol<C64>&);
template QQi wres(const ClassicalSymbol<QQi>&);
template C64 wres(const ClassicalSymbol<C64>&);

}  // namespace wreslab
