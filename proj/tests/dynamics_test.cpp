#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "isochrone/analysis.hpp"
#include "isochrone/dynamics.hpp"
#include "isochrone/elliptic.hpp"
#include "isochrone/error.hpp"

using namespace isochrone;
using namespace isochrone::dynamics;
using std::numbers::pi;

namespace {

PerturbationSpec unperturbed() {
  PerturbationSpec s;
  s.a = {1.0, -2.0, 0.5};
  s.epsilon = 0.0;
  return s;
}

double displacement(double x0, const PerturbationSpec& s) { return return_map(x0, s).x1 - x0; }

}  // namespace

TEST_CASE("vector field") {
  const auto s = analysis::preset("3c");
  const auto [cx, cy] = vector_field({-1.0, 0.0, 0.0}, s);
  CHECK(cx == 0.0);
  CHECK(cy == 0.0);

  for (double u : {0.1, 0.5, 0.9}) {
    const double x = -u;
    const auto [dx, dy] = vector_field({x, 0.0, 0.0}, unperturbed());
    CHECK(dx == 0.0);
    CHECK(dy == doctest::Approx((x + 1) * (x * x + 1) / 4));
    CHECK(dy > 0.0);
  }
  const auto [ax, ay] = vector_field({0.0, 1.0, 0.0}, unperturbed());
  CHECK(ax == 0.0);
  CHECK(ay == 1.25);

  PerturbationSpec p;
  p.a = {2.0};
  p.epsilon = 0.1;
  CHECK(vector_field({-0.5, 2.0, 0.0}, p).second ==
        doctest::Approx(4.0 + (-0.125 + 0.25 - 0.5 + 1) / 4 + 0.1 * 2.0 * 2.0));
}

TEST_CASE("first integral") {
  CHECK(first_integral({-1.0, 0.0, 0.0}) == 0.0);
  for (double h : {0.2, 4.0 / 9.0}) CHECK(first_integral({-1.0, std::sqrt(h), 0.0}) == doctest::Approx(h));
  CHECK(first_integral({-1.0 / 3, 0.0, 0.0}) == doctest::Approx(4.0 / 9.0));
  CHECK_THROWS_AS(first_integral({0.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("the centre is stationary") {
  const auto o = integrate_orbit({-1.0, 0.0, 0.0}, analysis::preset("1c"));
  CHECK(o.status == OrbitStatus::stationary);
  CHECK(std::string(status_name(o.status)) == "stationary");
}

TEST_CASE("unperturbed orbits close after 2 pi") {
  for (double x0 : {-0.2, -0.447, -0.7}) {
    CAPTURE(x0);
    OrbitOptions opts;
    opts.record = true;
    const auto o = integrate_orbit({x0, 0.0, 0.0}, unperturbed(), opts);
    REQUIRE(o.status == OrbitStatus::returned);
    CHECK(std::abs(o.crossings[0].t - 2 * pi) <= 1e-8 * 2 * pi);
    CHECK(std::abs(o.crossings[0].x - x0) < 1e-9);
    const double h0 = first_integral({x0, 0.0, 0.0});
    double drift = 0.0;
    for (const auto& s : o.trajectory) drift = std::max(drift, std::abs(first_integral(s) - h0));
    CHECK(drift <= 1e-9 * h0);
  }
}

TEST_CASE("several returns in one call") {
  OrbitOptions opts;
  opts.crossings = 3;
  const auto o = integrate_orbit({-0.5, 0.0, 0.0}, unperturbed(), opts);
  REQUIRE(o.crossings.size() == 3);
  CHECK(o.crossings[2].t == doctest::Approx(6 * pi).epsilon(1e-8));
}

TEST_CASE("time budget") {
  OrbitOptions opts;
  opts.max_time = 1.0;
  CHECK(integrate_orbit({-0.5, 0.0, 0.0}, unperturbed(), opts).status == OrbitStatus::timeout);
}

TEST_CASE("return map domain") {
  CHECK_THROWS_AS(return_map(0.0, unperturbed()), DomainError);
  CHECK_THROWS_AS(return_map(-1.0, unperturbed()), DomainError);
  CHECK_THROWS_AS(return_map(0.3, unperturbed()), DomainError);
  OrbitOptions opts;
  opts.max_time = 1.0;
  CHECK_THROWS_AS(return_map(-0.5, unperturbed(), opts), DomainError);
}

TEST_CASE("displacement changes sign across a simple zero") {
  const auto s = analysis::preset("1c");
  const double xs = -1 / std::sqrt(5.0);
  const double dl = displacement(xs - 0.05, s);
  const double dr = displacement(xs + 0.05, s);
  CHECK(dl * dr < 0.0);
}

TEST_CASE("displacement follows minus epsilon times I") {
  const auto s = analysis::preset("1c");
  double typical = 0.0;
  for (double u : {0.25, 0.35, 0.55, 0.8}) {
    CAPTURE(u);
    const double d = displacement(-u, s);
    typical = std::max(typical, std::abs(d));
    const double I = analysis::eval_I_u(s, u);
    CHECK(d * (s.epsilon * I) < 0.0);
  }
  // close to the centre the displacement is small but keeps the sign
  const double u = 0.98;
  const double d = displacement(-u, s);
  CHECK(std::abs(d) < 0.1 * typical);
  CHECK(d * (s.epsilon * analysis::eval_I_u(s, u)) < 0.0);
}

TEST_CASE("cycle search needs a perturbation") {
  auto s = analysis::preset("1c");
  s.epsilon = 0.0;
  CHECK_THROWS_AS(detect_limit_cycles(s), DomainError);
  CycleSearch bad;
  bad.u_min = 0.5;
  bad.u_max = 0.4;
  CHECK_THROWS_AS(detect_limit_cycles(analysis::preset("1c"), bad), DomainError);
}

TEST_CASE("cycles match the simple zeros") {
  for (double eps : {1e-3, 1e-4}) {
    for (const char* name : {"1c", "2c", "3bc"}) {
      CAPTURE(eps);
      CAPTURE(name);
      const auto s = analysis::preset(name, eps);
      const auto zeros = analysis::find_zeros(s);
      const auto cycles = detect_limit_cycles(s);
      REQUIRE(cycles.size() == zeros.zeros.size());
      for (std::size_t k = 0; k < cycles.size(); ++k) {
        // cycles come out in order of increasing u, zeros likewise
        const double want = elliptic::h_from_u(zeros.zeros[k].u);
        CHECK(std::abs(cycles[k].h_level - want) <= 0.05 * want);
        CHECK(cycles[k].h_level == doctest::Approx(first_integral({cycles[k].x0, 0.0, 0.0})));
        CHECK(cycles[k].period == doctest::Approx(2 * pi).epsilon(1e-2));
        CHECK(cycles[k].epsilon == eps);
      }
    }
  }
}

TEST_CASE("cycle JSON") {
  const auto cycles = detect_limit_cycles(analysis::preset("1c"));
  REQUIRE(cycles.size() == 1);
  const auto j = to_json(cycles[0]);
  CHECK(j.contains("x0"));
  CHECK(j.contains("h_level"));
  CHECK(j["bracket"].size() == 2);
  CHECK((j["stability"] == "attracting" || j["stability"] == "repelling"));
}

TEST_CASE("near-tangency of the displacement at a double zero") {
  const auto s = analysis::preset("3c");
  double dmin = 1e300;
  double umin = 0.0;
  double dmax = 0.0;
  std::vector<double> flips;
  double prev = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const double u = 0.18 + 0.3 * k / 30.0;
    const double d = displacement(-u, s);
    if (std::abs(d) < dmin) {
      dmin = std::abs(d);
      umin = u;
    }
    dmax = std::max(dmax, std::abs(d));
    if (k > 0 && (d < 0) != (prev < 0)) flips.push_back(u);
    prev = d;
  }
  CHECK(std::abs(umin - 1.0 / 3) < 0.02);
  CHECK(dmin < 0.05 * dmax);
  // either no crossing or a tight pair around 1/3
  CHECK((flips.empty() || (flips.size() == 2 && flips[1] - flips[0] < 0.05)));
}
