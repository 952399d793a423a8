#pragma once

#include <vector>

namespace isochrone {

/// Liénard-type perturbation ε f(x) y with f(x) = Σ a_i x^i.
struct PerturbationSpec {
  std::vector<double> a;  // a_0 .. a_n
  double epsilon = 0.0;

  int degree() const noexcept { return static_cast<int>(a.size()) - 1; }

  double f(double x) const noexcept {
    double acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  bool all_zero() const noexcept {
    for (double c : a) {
      if (c != 0.0) return false;
    }
    return true;
  }
};

}  // namespace isochrone
