#pragma once

#include <utility>
#include <vector>

#include "isochrone/exact/json.hpp"
#include "isochrone/perturbation.hpp"

namespace isochrone::dynamics {

struct State {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// ẋ = xy - x²y,  ẏ = y² + (x³+x²+x+1)/4 + ε f(x) y.
std::pair<double, double> vector_field(const State& s, const PerturbationSpec& spec);

/// H(x, y) = (x-1)² (x² + 2x + 1 + 4y²) / (16 x²); DomainError at x = 0.
double first_integral(const State& s);

struct OrbitOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_time = 200.0;
  double event_tol = 1e-12;   // time resolution of section crossings
  int crossings = 1;          // stop after this many section crossings
  bool record = false;        // keep every accepted step in the trajectory
};

enum class OrbitStatus { returned, timeout, escaped, stationary };

const char* status_name(OrbitStatus s);

/// Upward crossing of Σ = {y = 0, -1 < x < 0}.
struct Crossing {
  double t = 0.0;
  double x = 0.0;
};

struct Orbit {
  OrbitStatus status = OrbitStatus::timeout;
  std::vector<State> trajectory;
  std::vector<Crossing> crossings;
};

/// Adaptive Dormand-Prince 5(4) with dense output; crossings of Σ are located
/// by bracketing root finding on the interpolant. The orbit escapes when it
/// comes within 1e-9 of the invariant lines x = 0 or x = 1, or blows up.
Orbit integrate_orbit(const State& s0, const PerturbationSpec& spec, const OrbitOptions& opts = {});

struct Return {
  double x1 = 0.0;
  double period = 0.0;
};

/// Next upward crossing of Σ starting from (x0, 0). DomainError for x0
/// outside (-1, 0) and when the orbit times out or escapes first.
Return return_map(double x0, const PerturbationSpec& spec, const OrbitOptions& opts = {});

struct CycleSearch {
  double u_min = 0.1;
  double u_max = 0.9;
  int grid = 41;
};

struct CycleRecord {
  double x0 = 0.0;
  double period = 0.0;
  double h_level = 0.0;
  std::pair<double, double> bracket;
  double epsilon = 0.0;
  double slope = 0.0;  // d'(x0) estimated from the bracket; negative means attracting
};

/// Displacement d(x0) = P(x0) - x0 on x0 = -u over the search grid; each sign
/// change is refined to a fixed point of P. DomainError when ε = 0.
std::vector<CycleRecord> detect_limit_cycles(const PerturbationSpec& spec, const CycleSearch& search = {},
                                             const OrbitOptions& opts = {});

Json to_json(const CycleRecord& c);

}  // namespace isochrone::dynamics
