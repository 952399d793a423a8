#pragma once

#include <functional>

#include "isochrone/elliptic.hpp"

namespace isochrone::quadrature {

/// The closed level curve H = h around the centre (-1, 0). It meets y = 0 at
/// x_right = -u and x_left = -1/u.
struct LevelOval {
  double h = 0.0;
  double x_left = 0.0;
  double x_right = 0.0;
  double u = 0.0;
};

LevelOval oval_extent(double h);

/// Upper branch of the oval: the y >= 0 solution of H(x, y) = h.
/// DomainError outside [x_left, x_right].
double y_on_curve(double x, double h);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

inline constexpr double kDefaultRelTol = 1e-9;

enum class Differential { dx, dy };

/// ∮ F(x, y) dx or ∮ F(x, y) dy over the oval, traversed along the
/// unperturbed flow (upwards through x_right). The loop is parametrized by
/// x = m + r sin t so the integrand is smooth and periodic in t, and the
/// trapezoidal rule converges geometrically.
QuadResult loop_integral(const std::function<double(double, double)>& F, Differential form, double h,
                         double rel_tol = kDefaultRelTol);

/// I_{i,j}(h) = ∮ (x-1) x^{i-3} y^j dx. Even j is 0 by the x-axis symmetry and
/// is returned exactly. DomainError for h <= 0 or j <= 0.
QuadResult quad_Iij(int i, int j, double h, double rel_tol = kDefaultRelTol);

/// The same integral split into its two branches, each integrated separately
/// with Gauss-Kronrod after the x = m + r sin t substitution. Used to check
/// the symmetry argument numerically for even j.
struct BranchPair {
  QuadResult upper;
  QuadResult lower;
};
BranchPair quad_Iij_branches(int i, int j, double h, double rel_tol = kDefaultRelTol);

/// K(k), E(k) straight from their defining integrals over [0, π/2].
elliptic::EllipticPair quad_KE(double k);

}  // namespace isochrone::quadrature
