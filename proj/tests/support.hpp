#pragma once

#include <algorithm>
#include <cmath>

#include "isochrone/exact/combo.hpp"
#include "isochrone/quadrature.hpp"

namespace isochrone::testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Σ c_g(h) · I_g(h) with every generator taken from the quadrature oracle.
inline double oracle_sum(const exact::GeneratorCombo& c, double h) {
  double acc = 0.0;
  for (const auto& [g, p] : c.terms()) acc += p.eval(h) * quadrature::quad_Iij(g.i, g.j, h, 1e-12).value;
  return acc;
}

}  // namespace isochrone::testing
