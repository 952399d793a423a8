#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isochrone/analysis.hpp"
#include "isochrone/elliptic.hpp"
#include "isochrone/error.hpp"
#include "isochrone/quadrature.hpp"
#include "isochrone/reduction.hpp"
#include "support.hpp"

using namespace isochrone;
using namespace isochrone::analysis;
using isochrone::testing::rel_err;
using std::numbers::pi;

namespace {

double dI(const PerturbationSpec& s, double u, int order) {
  const auto f = elliptic::to_u_form(reduction::assemble_I(s));
  return elliptic::pf_derivative(f, order)(u);
}

}  // namespace

TEST_CASE("designed zeros of the corrected sets") {
  CHECK(std::abs(eval_I_u(preset("1c"), 1 / std::sqrt(5.0))) < 1e-9);
  CHECK(std::abs(eval_I_u(preset("2c"), 0.5)) < 1e-9);
  const auto s3 = preset("3c");
  CHECK(std::abs(eval_I_u(s3, 1.0 / 3)) < 1e-9);
  CHECK(std::abs(dI(s3, 1.0 / 3, 1)) < 1e-9);
  CHECK(std::abs(dI(s3, 1.0 / 3, 2)) > 1.0);
}

TEST_CASE("published sets are built from K and E at their moduli") {
  const auto k1 = elliptic::agm_KE(2 * std::sqrt(6.0) / 5);
  const auto p1 = preset("1");
  REQUIRE(p1.a.size() == 2);
  CHECK(p1.a[0] == doctest::Approx(25 * k1.E - 13 * k1.K).epsilon(1e-15));
  CHECK(p1.a[1] == doctest::Approx(2 * std::sqrt(5.0) * pi).epsilon(1e-15));

  const auto k2 = elliptic::agm_KE(std::sqrt(15.0) / 4);
  const auto p2 = preset("2");
  REQUIRE(p2.a.size() == 3);
  CHECK(p2.a[0] == doctest::Approx(-0.5 * k2.E).epsilon(1e-15));
  CHECK(p2.a[2] == doctest::Approx(17.0 / 64 * k2.K).epsilon(1e-15));

  const auto p3 = preset("3");
  const auto p3b = preset("3b");
  REQUIRE(p3.a.size() == 4);
  CHECK(p3b.a[0] - p3.a[0] == doctest::Approx(1.0));
  CHECK(p3.a[2] == 1.0);

  for (const auto& name : preset_names()) CHECK(preset(name).epsilon == 1e-3);
  CHECK(preset("2c", 0.25).epsilon == 0.25);
  CHECK_THROWS_AS(preset("4"), DomainError);
  CHECK_THROWS_AS(preset_target("nope"), DomainError);
}

TEST_CASE("find_zeros on the corrected sets") {
  const auto r1 = find_zeros(preset("1c"));
  REQUIRE(r1.zeros.size() == 1);
  CHECK(std::abs(r1.zeros[0].u - 1 / std::sqrt(5.0)) < 1e-8);
  CHECK(r1.zeros[0].multiplicity == 1);

  const auto r2 = find_zeros(preset("2c"));
  REQUIRE(r2.zeros.size() == 1);
  CHECK(std::abs(r2.zeros[0].u - 0.5) < 1e-8);

  const auto r3 = find_zeros(preset("3c"));
  REQUIRE(r3.zeros.size() == 1);
  CHECK(std::abs(r3.zeros[0].u - 1.0 / 3) < 1e-8);
  CHECK(r3.zeros[0].multiplicity == 2);
  CHECK(std::abs(r3.zeros[0].value) < 1e-9);
  CHECK(std::abs(r3.zeros[0].slope) < 1e-9);
  CHECK(r3.total_multiplicity() == 2);

  const auto r3b = find_zeros(preset("3bc"));
  REQUIRE(r3b.zeros.size() == 2);
  CHECK(r3b.zeros[0].u < 1.0 / 3);
  CHECK(r3b.zeros[1].u > 1.0 / 3);
  const auto t = preset_target("3bc");
  CHECK(std::abs(r3b.zeros[0].u - t.simple[0]) < 1e-8);
  CHECK(std::abs(r3b.zeros[1].u - t.simple[1]) < 1e-8);
  for (const auto& z : r3b.zeros) CHECK(z.multiplicity == 1);
}

TEST_CASE("sign-definite and vanishing integrals") {
  for (int n = 0; n <= 4; ++n) {
    PerturbationSpec s;
    s.a.assign(static_cast<std::size_t>(n) + 1, 0.0);
    s.a[0] = 1.0;
    const auto r = find_zeros(s);
    CHECK_FALSE(r.identically_zero);
    CHECK(r.zeros.empty());
  }
  PerturbationSpec zero;
  zero.a = {0.0, 0.0, 0.0};
  const auto r = find_zeros(zero);
  CHECK(r.identically_zero);
  CHECK(r.zeros.empty());
}

TEST_CASE("zero count never exceeds the bound") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick_n(1, 6);
  std::normal_distribution<double> coeff(0.0, 1.0);
  int with_zeros = 0;
  for (int draw = 0; draw < 200; ++draw) {
    PerturbationSpec s;
    const int n = pick_n(rng);
    for (int i = 0; i <= n; ++i) s.a.push_back(coeff(rng));
    const auto r = find_zeros(s);
    CAPTURE(draw);
    CHECK(r.total_multiplicity() <= zero_bound(n));
    CHECK(r.bound.bound == zero_bound(n));
    for (std::size_t k = 1; k < r.zeros.size(); ++k) CHECK(r.zeros[k - 1].u < r.zeros[k].u);
    if (!r.zeros.empty()) ++with_zeros;
  }
  CHECK(with_zeros > 20);
}

TEST_CASE("eval_I_u against the oracle sum") {
  PerturbationSpec s;
  s.a = {0.4, -1.3, 2.2, 0.7, -0.9, 0.15};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick_u(0.05, 0.95);
  for (int t = 0; t < 10; ++t) {
    const double u = pick_u(rng);
    const double h = elliptic::h_from_u(u);
    double want = 0.0;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      want += 0.5 * s.a[i] * quadrature::quad_Iij(static_cast<int>(i), 1, h, 1e-12).value;
    }
    CAPTURE(u);
    CHECK(rel_err(eval_I_u(s, u), want) < 1e-6);
    CHECK(rel_err(eval_I_u(s, u), elliptic::eval_I_h(reduction::assemble_I(s), h)) < 1e-10);
  }
  CHECK_THROWS_AS(eval_I_u(s, 0.0), DomainError);
  CHECK_THROWS_AS(eval_I_u(s, 1.0), DomainError);
}

TEST_CASE("zero bound") {
  CHECK(zero_bound(3) == 65);
  CHECK(zero_bound(4) == 94);
  CHECK(zero_bound(5) == 109);
  CHECK(zero_bound(1) == 28);
  CHECK(zero_bound(2) == 50);
  CHECK_FALSE(zero_bound_accounting(1).sharp);
  CHECK_FALSE(zero_bound_accounting(2).sharp);
  CHECK_THROWS_AS(zero_bound(0), DomainError);
  for (int m = 2; m <= 12; ++m) {
    CHECK(zero_bound(2 * m + 1) - zero_bound(2 * m - 1) == 44);
    CHECK(zero_bound(2 * m + 2) - zero_bound(2 * m) == 44);
  }
}

TEST_CASE("bound accounting") {
  CHECK(phi_bound(2, 3) == 6);
  CHECK(phi_bound(0, 0) == 1);

  const auto b3 = zero_bound_accounting(3);
  CHECK(b3.sharp);
  CHECK(b3.derivative_order == 6);
  CHECK(b3.deg_phi == 30);
  CHECK(b3.deg_psi == 28);
  CHECK(b3.phi_psi_bound == 59);

  for (int n = 3; n <= 25; n += 2) {
    CAPTURE(n);
    const auto b = zero_bound_accounting(n);
    const int a = (n - 3) / 2;
    const int c = (n - 2) / 2;
    CHECK(b.derivative_order == 4 * c + 6);
    CHECK(b.phi_psi_bound == phi_bound(b.deg_phi, b.deg_psi));
    CHECK(b.phi_psi_bound == 8 * a + 32 * c + 59);
    CHECK(b.bound == b.phi_psi_bound + b.derivative_order);
    CHECK(b.bound == 22 * n - 1);
  }
  for (int n = 4; n <= 24; n += 2) {
    CAPTURE(n);
    const auto b = zero_bound_accounting(n);
    CHECK(b.phi_psi_bound == phi_bound(b.deg_phi, b.deg_psi));
    CHECK(b.bound == b.phi_psi_bound + b.derivative_order);
    CHECK(b.bound == 22 * n + 6);
  }
}

TEST_CASE("zero report JSON") {
  const auto j = to_json(find_zeros(preset("3c")));
  CHECK(j["identically_zero"] == false);
  CHECK(j["zeros"][0]["multiplicity"] == 2);
  CHECK(j["total_multiplicity"] == 2);
  CHECK(j["bound"]["bound"] == 65);
  CHECK(j["diagnostics"]["grid"] == 2000);
}
