#include "isochrone/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include "isochrone/error.hpp"
#include "isochrone/format.hpp"

namespace isochrone::quadrature {

namespace {

constexpr double pi = std::numbers::pi;

// y on the oval factors as ±sqrt((x - x_left)(x_right - x)) · q(x) with
// q(x) = sqrt((u - x)(1/u - x)) / (2 (1 - x)), smooth on the whole span.
struct Chart {
  double m;  // midpoint
  double r;  // half width
  double s;  // u + 1/u

  explicit Chart(const LevelOval& o)
      : m(0.5 * (o.x_left + o.x_right)), r(0.5 * (o.x_right - o.x_left)), s(o.u + 1.0 / o.u) {}

  double g(double x) const { return x * x - s * x + 1.0; }
  double q(double x) const { return std::sqrt(g(x)) / (2.0 * (1.0 - x)); }

  double dq(double x) const {
    const double root = std::sqrt(g(x));
    return (2.0 * x - s) / (4.0 * (1.0 - x) * root) + root / (2.0 * (1.0 - x) * (1.0 - x));
  }
};

void require_level(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError(Module::quadrature, "energy level h=" + format_real(h) + " must be positive");
  }
}

double monomial_weight(int i, double x) { return (x - 1.0) * std::pow(x, i - 3); }

}  // namespace

LevelOval oval_extent(double h) {
  require_level(h);
  const double u = elliptic::params_from_h(h).u;
  return {h, -1.0 / u, -u, u};
}

double y_on_curve(double x, double h) {
  const LevelOval o = oval_extent(h);
  if (!(x >= o.x_left && x <= o.x_right)) {
    throw DomainError(Module::quadrature, "x=" + format_real(x) + " outside the oval span [" +
                                              format_real(o.x_left) + ", " + format_real(o.x_right) + "]");
  }
  const Chart c(o);
  const double w = std::max(0.0, (x - o.x_left) * (o.x_right - x));
  return std::sqrt(w) * c.q(x);
}

QuadResult loop_integral(const std::function<double(double, double)>& F, Differential form, double h,
                         double rel_tol) {
  const LevelOval o = oval_extent(h);
  const Chart c(o);
  // t = π/2 is x_right with y increasing through 0.
  auto integrand = [&](double t) {
    const double st = std::sin(t);
    const double ct = std::cos(t);
    const double x = c.m + c.r * st;
    const double y = -c.r * ct * c.q(x);
    const double dxdt = c.r * ct;
    const double dydt = c.r * st * c.q(x) - c.r * ct * c.dq(x) * dxdt;
    return F(x, y) * (form == Differential::dx ? dxdt : dydt);
  };
  QuadResult out;
  out.value = boost::math::quadrature::trapezoidal(integrand, 0.0, 2.0 * pi, rel_tol, 14, &out.error);
  out.error = std::max(out.error, std::abs(out.value) * std::numeric_limits<double>::epsilon());
  return out;
}

QuadResult quad_Iij(int i, int j, double h, double rel_tol) {
  require_level(h);
  if (j <= 0) throw DomainError(Module::quadrature, "I_{i,j} needs j >= 1, got j=" + std::to_string(j));
  if (j % 2 == 0) return {0.0, 0.0};
  return loop_integral([i, j](double x, double y) { return monomial_weight(i, x) * std::pow(y, j); },
                       Differential::dx, h, rel_tol);
}

BranchPair quad_Iij_branches(int i, int j, double h, double rel_tol) {
  require_level(h);
  if (j <= 0) throw DomainError(Module::quadrature, "I_{i,j} needs j >= 1, got j=" + std::to_string(j));
  const LevelOval o = oval_extent(h);
  const Chart c(o);
  // ∫_{x_left}^{x_right} (x-1) x^{i-3} (±y+)^j dx with x = m + r sin t.
  auto branch = [&](double sign) {
    auto f = [&](double t) {
      const double ct = std::cos(t);
      const double x = c.m + c.r * std::sin(t);
      const double y = sign * c.r * ct * c.q(x);
      return monomial_weight(i, x) * std::pow(y, j) * c.r * ct;
    };
    QuadResult r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, -pi / 2, pi / 2, 15, rel_tol,
                                                                             &r.error);
    return r;
  };
  // Along the flow the upper branch runs right to left and the lower one left to right.
  QuadResult upper = branch(1.0);
  upper.value = -upper.value;
  return {upper, branch(-1.0)};
}

elliptic::EllipticPair quad_KE(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError(Module::quadrature, "modulus k=" + format_real(k) + " outside [0,1)");
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double k2 = k * k;
  const double K = GK::integrate([k2](double t) { return 1.0 / std::sqrt(1.0 - k2 * std::sin(t) * std::sin(t)); },
                                 0.0, pi / 2, 20, 1e-15);
  const double E = GK::integrate([k2](double t) { return std::sqrt(1.0 - k2 * std::sin(t) * std::sin(t)); }, 0.0,
                                 pi / 2, 20, 1e-15);
  return {K, E, k};
}

}  // namespace isochrone::quadrature
