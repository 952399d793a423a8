#include "isochrone/dynamics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "isochrone/error.hpp"
#include "isochrone/format.hpp"
#include "isochrone/parallel.hpp"

namespace isochrone::dynamics {

namespace {

namespace odeint = boost::numeric::odeint;
using Vec = std::array<double, 2>;

bool escaped(const Vec& s) {
  const double x = s[0];
  const double y = s[1];
  if (!std::isfinite(x) || !std::isfinite(y)) return true;
  if (std::abs(x) < 1e-9 || std::abs(x - 1.0) < 1e-9) return true;
  return std::abs(x) > 1e12 || std::abs(y) > 1e12;
}

}  // namespace

std::pair<double, double> vector_field(const State& s, const PerturbationSpec& spec) {
  const double x = s.x;
  const double y = s.y;
  const double dx = x * y - x * x * y;
  const double dy = y * y + (((x + 1.0) * x + 1.0) * x + 1.0) / 4.0 + spec.epsilon * spec.f(x) * y;
  return {dx, dy};
}

double first_integral(const State& s) {
  if (s.x == 0.0) throw DomainError(Module::dynamics, "H is undefined on the invariant line x = 0");
  const double x = s.x;
  const double w = (x - 1.0) / x;
  return w * w * ((x + 1.0) * (x + 1.0) + 4.0 * s.y * s.y) / 16.0;
}

const char* status_name(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::returned: return "returned";
    case OrbitStatus::timeout: return "timeout";
    case OrbitStatus::escaped: return "escaped";
    case OrbitStatus::stationary: return "stationary";
  }
  return "unknown";
}

Orbit integrate_orbit(const State& s0, const PerturbationSpec& spec, const OrbitOptions& opts) {
  Orbit orbit;
  orbit.trajectory.push_back(s0);
  const auto [fx, fy] = vector_field(s0, spec);
  if (fx == 0.0 && fy == 0.0) {
    orbit.status = OrbitStatus::stationary;
    return orbit;
  }

  auto rhs = [&spec](const Vec& v, Vec& dv, double t) {
    const auto [dx, dy] = vector_field({v[0], v[1], t}, spec);
    dv = {dx, dy};
  };
  auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<Vec>());
  stepper.initialize(Vec{s0.x, s0.y}, s0.t, 1e-3);

  Vec prev{s0.x, s0.y};
  while (true) {
    const auto [t0, t1] = stepper.do_step(rhs);
    const Vec cur = stepper.current_state();
    if (escaped(cur)) {
      orbit.status = OrbitStatus::escaped;
      return orbit;
    }
    if (opts.record) orbit.trajectory.push_back({cur[0], cur[1], t1});

    if (prev[1] < 0.0 && cur[1] >= 0.0) {
      Vec at{};
      auto y_at = [&](double t) {
        stepper.calc_state(t, at);
        return at[1];
      };
      double tc = t1;
      if (cur[1] > 0.0) {
        std::uintmax_t iterations = 100;
        const auto r = boost::math::tools::toms748_solve(
            y_at, t0, t1, prev[1], cur[1],
            [&opts](double a, double b) { return std::abs(b - a) <= opts.event_tol; }, iterations);
        tc = 0.5 * (r.first + r.second);
      }
      stepper.calc_state(tc, at);
      if (at[0] > -1.0 && at[0] < 0.0) {
        orbit.crossings.push_back({tc, at[0]});
        if (static_cast<int>(orbit.crossings.size()) >= opts.crossings) {
          orbit.status = OrbitStatus::returned;
          return orbit;
        }
      }
    }
    if (t1 - s0.t > opts.max_time) {
      orbit.status = OrbitStatus::timeout;
      return orbit;
    }
    prev = cur;
  }
}

Return return_map(double x0, const PerturbationSpec& spec, const OrbitOptions& opts) {
  if (!(x0 > -1.0 && x0 < 0.0)) {
    throw DomainError(Module::dynamics, "section coordinate x0=" + format_real(x0) + " outside (-1, 0)");
  }
  OrbitOptions one = opts;
  one.crossings = 1;
  one.record = false;
  const Orbit orbit = integrate_orbit({x0, 0.0, 0.0}, spec, one);
  if (orbit.status != OrbitStatus::returned) {
    throw DomainError(Module::dynamics, std::string("no return to the section from x0=") + format_real(x0) + ": " +
                                            status_name(orbit.status));
  }
  return {orbit.crossings.front().x, orbit.crossings.front().t};
}

std::vector<CycleRecord> detect_limit_cycles(const PerturbationSpec& spec, const CycleSearch& search,
                                             const OrbitOptions& opts) {
  if (spec.epsilon == 0.0) {
    throw DomainError(Module::dynamics, "epsilon = 0: every orbit of the annulus is closed, no cycles to isolate");
  }
  if (search.grid < 2 || !(search.u_min > 0.0 && search.u_min < search.u_max && search.u_max < 1.0)) {
    throw DomainError(Module::dynamics, "cycle search needs 0 < u_min < u_max < 1 and grid >= 2");
  }
  const auto N = static_cast<std::size_t>(search.grid);
  std::vector<double> xs(N), ds(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double u = search.u_min + (search.u_max - search.u_min) * static_cast<double>(k) / static_cast<double>(N - 1);
    xs[k] = -u;
  }
  auto displacement = [&](double x0) { return return_map(x0, spec, opts).x1 - x0; };
  parallel_for(N, [&](std::size_t k) {
    try {
      ds[k] = displacement(xs[k]);
    } catch (const DomainError&) {
      ds[k] = std::numeric_limits<double>::quiet_NaN();
    }
  });

  std::vector<CycleRecord> cycles;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    const double da = ds[k];
    const double db = ds[k + 1];
    if (!std::isfinite(da) || !std::isfinite(db) || da == 0.0 || (da < 0.0) == (db < 0.0)) continue;
    // x0 = -u decreases along the grid; the solver wants an increasing bracket.
    std::uintmax_t iterations = 80;
    const auto r = boost::math::tools::toms748_solve(
        displacement, xs[k + 1], xs[k], db, da, [](double a, double b) { return std::abs(b - a) <= 1e-11; },
        iterations);
    CycleRecord c;
    c.x0 = 0.5 * (r.first + r.second);
    c.period = return_map(c.x0, spec, opts).period;
    c.h_level = first_integral({c.x0, 0.0, 0.0});
    c.bracket = {xs[k], xs[k + 1]};
    c.epsilon = spec.epsilon;
    c.slope = (db - da) / (xs[k + 1] - xs[k]);
    cycles.push_back(c);
  }
  return cycles;
}

Json to_json(const CycleRecord& c) {
  return Json{{"x0", format_real(c.x0)},
              {"u0", format_real(-c.x0)},
              {"period", format_real(c.period)},
              {"h_level", format_real(c.h_level)},
              {"bracket", Json::array({format_real(c.bracket.first), format_real(c.bracket.second)})},
              {"epsilon", format_real(c.epsilon)},
              {"slope", format_real(c.slope)},
              {"stability", c.slope < 0.0 ? "attracting" : "repelling"}};
}

}  // namespace isochrone::dynamics
