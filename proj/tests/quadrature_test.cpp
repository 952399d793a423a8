#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isochrone/dynamics.hpp"
#include "isochrone/elliptic.hpp"
#include "isochrone/error.hpp"
#include "isochrone/quadrature.hpp"
#include "support.hpp"

using namespace isochrone;
using namespace isochrone::quadrature;
using isochrone::testing::rel_err;
using std::numbers::pi;

namespace {

double H(double x, double y) { return dynamics::first_integral({x, y, 0.0}); }

}  // namespace

TEST_CASE("oval extent") {
  const auto a = oval_extent(4.0 / 9.0);
  CHECK(std::abs(a.x_right + 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(a.x_left + 3.0) < 1e-12);

  const auto b = oval_extent(1.0);
  CHECK(std::abs(b.x_right - (2 - std::sqrt(5.0))) < 1e-12);
  CHECK(std::abs(b.x_left + (2 + std::sqrt(5.0))) < 1e-12);

  const auto c = oval_extent(1e-12);
  CHECK(std::abs(c.x_right + 1) < 1e-5);
  CHECK(std::abs(c.x_left + 1) < 1e-5);

  for (double h : {1e-6, 0.01, 0.3, 1.0, 7.0, 42.0, 100.0}) {
    CAPTURE(h);
    const auto o = oval_extent(h);
    CHECK(o.x_left < o.x_right);
    CHECK(o.x_right < 0.0);
    CHECK(std::abs(o.x_left * o.x_right - 1) < 1e-12);
    CHECK(std::abs(H(o.x_left, 0) - h) <= 1e-10 * std::max(1.0, h));
    CHECK(std::abs(H(o.x_right, 0) - h) <= 1e-10 * std::max(1.0, h));
  }
  CHECK_THROWS_AS(oval_extent(0.0), DomainError);
}

TEST_CASE("upper branch of the oval") {
  const auto o = oval_extent(0.3);
  CHECK(y_on_curve(o.x_right, 0.3) == doctest::Approx(0.0));
  CHECK(y_on_curve(o.x_left, 0.3) == doctest::Approx(0.0));
  CHECK(y_on_curve(-1.0, 0.2) == doctest::Approx(std::sqrt(0.2)).epsilon(1e-14));
  CHECK(y_on_curve(-1.0, 4.0 / 9.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  for (double x : {-1.5, -1.2, -0.9, -0.6}) {
    const double y = y_on_curve(x, 0.3);
    CHECK(y >= 0.0);
    CHECK(std::abs(H(x, y) - 0.3) < 1e-10);
  }
  CHECK_THROWS_AS(y_on_curve(-0.1, 0.3), DomainError);
  CHECK_THROWS_AS(y_on_curve(-5.0, 0.3), DomainError);
}

TEST_CASE("orientation is pinned by I_{0,1} = -4 pi h") {
  CHECK(rel_err(quad_Iij(0, 1, 1.0).value, -4 * pi) < 1e-8);
  for (double h : {1e-4, 0.01, 0.1, 0.5, 1.0, 5.0, 25.0}) {
    CAPTURE(h);
    CHECK(std::abs(quad_Iij(0, 1, h).value + 4 * pi * h) <= 1e-8 * 4 * pi * h);
    CHECK(rel_err(quad_Iij(2, 1, h).value, -4 * pi * h) < 1e-8);
  }
}

TEST_CASE("odd powers of y vanish by symmetry") {
  CHECK(quad_Iij(5, 2, 1.0).value == 0.0);
  for (int i = -1; i <= 6; ++i) {
    for (int j : {2, 4}) {
      for (double h : {0.1, 1.0, 5.0}) {
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(h);
        CHECK(quad_Iij(i, j, h).value == 0.0);
        const auto b = quad_Iij_branches(i, j, h, 1e-12);
        const double scale = std::abs(b.upper.value) + std::abs(b.lower.value);
        CHECK(std::abs(b.upper.value + b.lower.value) <= 1e-10 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("branch split agrees with the loop rule for odd j") {
  for (int i = -1; i <= 5; ++i) {
    const auto b = quad_Iij_branches(i, 3, 0.7, 1e-12);
    CHECK(rel_err(b.upper.value + b.lower.value, quad_Iij(i, 3, 0.7, 1e-12).value) < 1e-8);
  }
}

TEST_CASE("cross-module agreement") {
  CHECK(rel_err(quad_Iij(3, 1, 1.0).value, elliptic::eval_generator({3, 1}, 1.0)) < 1e-6);
}

TEST_CASE("tightening the tolerance stays inside the error estimate") {
  for (int i : {-1, 0, 3, 7}) {
    for (double h : {0.05, 1.0, 10.0}) {
      CAPTURE(i);
      CAPTURE(h);
      const auto coarse = quad_Iij(i, 1, h, 1e-8);
      const auto fine = quad_Iij(i, 1, h, 0.5e-8);
      CHECK(std::abs(fine.value - coarse.value) <= std::max(coarse.error, 1e-15 * std::abs(coarse.value)));
    }
  }
}

TEST_CASE("dy loops") {
  // ∮ y dy = 0 and ∮ x dy = ±area; the flow runs counter-clockwise here
  const auto zero = loop_integral([](double, double y) { return y; }, Differential::dy, 0.5);
  CHECK(std::abs(zero.value) < 1e-10);
  const auto xdy = loop_integral([](double x, double) { return x; }, Differential::dy, 0.5);
  const auto ydx = loop_integral([](double, double y) { return y; }, Differential::dx, 0.5);
  CHECK(rel_err(xdy.value, -ydx.value) < 1e-10);
}

TEST_CASE("reject h <= 0 and j <= 0") {
  CHECK_THROWS_AS(quad_Iij(0, 1, 0.0), DomainError);
  CHECK_THROWS_AS(quad_Iij(0, 0, 1.0), DomainError);
}

TEST_CASE("quad_KE") {
  const auto z = quad_KE(0.0);
  CHECK(z.K == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(z.E == doctest::Approx(pi / 2).epsilon(1e-14));
}
