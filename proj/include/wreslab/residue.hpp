#pragma once

// Noncommutative residue on the circle.
//
// The co-sphere is {xi = +1, xi = -1} with counting measure and dx is Lebesgue
// measure on [0, 2pi). The residue density is the scalar polynomial
//
//   density(x) = tr a_{-1}(x, +1) + tr a_{-1}(x, -1),
//
// and wres() returns r, its zeroth Fourier coefficient, so that the residue
// itself is 2 pi r. Keeping r lets exact mode stay inside Q(i).

#include "wreslab/symbol.hpp"

namespace wreslab {

template <class S>
TrigPoly<S> wres_density(const ClassicalSymbol<S>& a);

template <class S>
S wres(const ClassicalSymbol<S>& a);

/// 2 pi r, float mode only.
C64 wres_geometric(const ClassicalSymbol<C64>& a);

}  // namespace wreslab
