#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isochrone/elliptic.hpp"
#include "isochrone/perturbation.hpp"

namespace isochrone::analysis {

/// I(u) = eval_I_h(assemble_I(spec), h_from_u(u)); DomainError unless 0 < u < 1.
double eval_I_u(const PerturbationSpec& spec, double u);

struct ZeroOptions {
  int grid = 2000;
  double tol = 1e-13;          // bracket width at which refinement stops
  double delta = 1e-4;         // scan [delta, 1 - delta]
  double certify_rel = 1e-9;   // |I|, |I'| <= certify_rel · max(1, grid scale) at a double zero
  double merge_width = 1e-6;   // sign changes closer than this are one double zero
  double window = 0.05;        // half width of the curvature certificate window
};

struct Zero {
  double u = 0.0;
  int multiplicity = 1;
  double value = 0.0;   // I(u)
  double slope = 0.0;   // I'(u)
  double curvature = 0.0;  // I''(u)
};

/// A local minimum of |I| with no zero: I' vanishes but I does not.
struct Tangency {
  double u = 0.0;
  double value = 0.0;
  double curvature = 0.0;
};

struct BoundAccounting {
  int n = 0;
  int bound = 0;
  bool sharp = false;
  // Only meaningful when sharp: derivatives taken to annihilate the K-free
  // part, degrees of the K and E coefficients afterwards, and the two-term
  // bound on the φK + ψE zeros.
  int derivative_order = -1;
  int deg_phi = -1;
  int deg_psi = -1;
  int phi_psi_bound = -1;
};

struct ZeroReport {
  bool identically_zero = false;
  std::vector<Zero> zeros;
  std::vector<Tangency> tangencies;
  BoundAccounting bound;
  ZeroOptions options;
  double grid_max = 0.0;     // max |I| on the grid
  double noise_floor = 0.0;  // identically-zero threshold actually applied

  int total_multiplicity() const;
};

ZeroReport find_zeros(const PerturbationSpec& spec, const ZeroOptions& opts = {});

/// deg φ + deg ψ + 1: zeros of φK + ψE on (0,1) for polynomials φ, ψ.
int phi_bound(int deg_phi, int deg_psi);

/// Upper bound for the number of zeros of I on (0,1) for a degree-n
/// perturbation: 22n-1 for odd n >= 3, 22n+6 for even n >= 4, and 22n+6
/// (not sharp) for n = 1, 2. n = 0 gives 0: I is a multiple of h.
BoundAccounting zero_bound_accounting(int n);
int zero_bound(int n);

Json to_json(const ZeroReport& r);
Json to_json(const BoundAccounting& b);

/// Named coefficient sets.
///   "1", "2", "3", "3b"      the published sets, taken literally;
///   "1c", "2c", "3c", "3bc"  sets with the same target zeros for the
///                            integral as actually evaluated here.
/// K and E values are computed at run time. DomainError for unknown names.
PerturbationSpec preset(std::string_view name, double epsilon = 1e-3);
std::vector<std::string> preset_names();

/// Expected zero locations of a preset (what the set was designed for).
struct PresetTarget {
  std::size_t simple_count = 0;
  std::vector<double> simple;  // locations, when they are known in advance
  std::optional<double> double_zero;
};
PresetTarget preset_target(std::string_view name);

}  // namespace isochrone::analysis
