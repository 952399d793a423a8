#include "isochrone/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "isochrone/error.hpp"
#include "isochrone/format.hpp"
#include "isochrone/parallel.hpp"

namespace isochrone::analysis {

namespace {

constexpr double pi = std::numbers::pi;

int floor_half(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

void require_coefficients(const PerturbationSpec& spec) {
  if (spec.a.empty()) throw DomainError(Module::analysis, "perturbation has no coefficients");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// The integral and its first two u-derivatives for one spec.
class Evaluator {
 public:
  explicit Evaluator(const PerturbationSpec& spec)
      : basis_(reduction::assemble_I(spec)),
        form_(elliptic::to_u_form(basis_)),
        d1_(elliptic::pf_derivative(form_, 1)),
        d2_(elliptic::pf_derivative(form_, 2)) {}

  double value(double u) const { return elliptic::eval_I_at_u(basis_, u); }
  double slope(double u) const { return d1_(u); }
  double curvature(double u) const { return d2_(u); }

 private:
  reduction::RealBasis basis_;
  elliptic::UForm form_;
  elliptic::UForm d1_;
  elliptic::UForm d2_;
};

template <class F>
double refine(F f, double a, double b, double fa, double fb, double tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iterations = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; }, iterations);
  return 0.5 * (r.first + r.second);
}

}  // namespace

double eval_I_u(const PerturbationSpec& spec, double u) {
  require_coefficients(spec);
  if (!(u > 0.0 && u < 1.0)) throw DomainError(Module::analysis, "u=" + format_real(u) + " outside (0,1)");
  return elliptic::eval_I_at_u(reduction::assemble_I(spec), u);
}

int ZeroReport::total_multiplicity() const {
  int total = 0;
  for (const auto& z : zeros) total += z.multiplicity;
  return total;
}

ZeroReport find_zeros(const PerturbationSpec& spec, const ZeroOptions& opts) {
  require_coefficients(spec);
  if (opts.grid < 100) throw DomainError(Module::analysis, "grid must be >= 100, got " + std::to_string(opts.grid));
  if (!(opts.tol > 0.0)) throw DomainError(Module::analysis, "tol must be positive");
  if (!(opts.delta > 0.0 && opts.delta < 0.5)) throw DomainError(Module::analysis, "delta must lie in (0, 1/2)");

  ZeroReport report;
  report.options = opts;
  const int n = spec.degree();
  report.bound = n >= 1 ? zero_bound_accounting(n) : BoundAccounting{0, 0, true};

  const Evaluator I(spec);
  const auto N = static_cast<std::size_t>(opts.grid);
  std::vector<double> us(N), vs(N);
  for (std::size_t k = 0; k < N; ++k) {
    us[k] = opts.delta + (1.0 - 2.0 * opts.delta) * static_cast<double>(k) / static_cast<double>(N - 1);
  }
  parallel_for(N, [&](std::size_t k) { vs[k] = I.value(us[k]); });

  report.grid_max = max_abs(vs);
  report.noise_floor = 1e-13 * (1.0 + max_abs(spec.a));
  if (report.grid_max < report.noise_floor) {
    report.identically_zero = true;
    return report;
  }

  const double small = opts.certify_rel * std::max(1.0, report.grid_max);
  auto value = [&](double u) { return I.value(u); };
  auto slope = [&](double u) { return I.slope(u); };

  auto certify_double = [&](double u) -> std::optional<Zero> {
    const Zero z{u, 2, I.value(u), I.slope(u), I.curvature(u)};
    if (std::abs(z.value) > small || std::abs(z.slope) > small) return std::nullopt;
    double window_max = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      if (std::abs(us[k] - u) <= opts.window) window_max = std::max(window_max, std::abs(vs[k]));
    }
    if (std::abs(z.curvature) * opts.window * opts.window / 2.0 < 0.1 * window_max) return std::nullopt;
    return z;
  };

  // Sign changes on the grid.
  std::vector<double> roots;
  for (std::size_t k = 0; k < N; ++k) {
    if (vs[k] == 0.0) {
      roots.push_back(us[k]);
    } else if (k + 1 < N && vs[k + 1] != 0.0 && (vs[k] < 0.0) != (vs[k + 1] < 0.0)) {
      roots.push_back(refine(value, us[k], us[k + 1], vs[k], vs[k + 1], opts.tol));
    }
  }

  // A double zero perturbed by rounding shows up as a tight pair of sign changes.
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const double u = roots[r];
    if (r + 1 < roots.size() && roots[r + 1] - u < opts.merge_width) {
      const double v = roots[r + 1];
      const double sa = I.slope(u);
      const double sb = I.slope(v);
      const double mid = (sa < 0.0) != (sb < 0.0) ? refine(slope, u, v, sa, sb, opts.tol) : 0.5 * (u + v);
      if (auto z = certify_double(mid)) {
        report.zeros.push_back(*z);
        ++r;
        continue;
      }
    }
    report.zeros.push_back({u, 1, I.value(u), I.slope(u), I.curvature(u)});
  }

  // Local minima of |I| without a sign change: tangencies, some of them double zeros.
  for (std::size_t k = 1; k + 1 < N; ++k) {
    const double a = std::abs(vs[k]);
    if (vs[k] == 0.0 || a > std::abs(vs[k - 1]) || a > std::abs(vs[k + 1])) continue;
    if ((vs[k - 1] < 0.0) != (vs[k] < 0.0) || (vs[k + 1] < 0.0) != (vs[k] < 0.0)) continue;
    const double sa = I.slope(us[k - 1]);
    const double sb = I.slope(us[k + 1]);
    if ((sa < 0.0) == (sb < 0.0)) continue;
    const double u = refine(slope, us[k - 1], us[k + 1], sa, sb, opts.tol);
    if (auto z = certify_double(u)) {
      report.zeros.push_back(*z);
    } else {
      report.tangencies.push_back({u, I.value(u), I.curvature(u)});
    }
  }

  std::sort(report.zeros.begin(), report.zeros.end(), [](const Zero& a, const Zero& b) { return a.u < b.u; });
  return report;
}

int phi_bound(int deg_phi, int deg_psi) {
  if (deg_phi < 0 || deg_psi < 0) throw DomainError(Module::analysis, "polynomial degrees must be >= 0");
  return deg_phi + deg_psi + 1;
}

BoundAccounting zero_bound_accounting(int n) {
  if (n < 1) throw DomainError(Module::analysis, "zero bound needs n >= 1, got n=" + std::to_string(n));
  BoundAccounting b;
  b.n = n;
  if (n <= 2) {
    b.bound = 22 * n + 6;
    return b;
  }
  const int a = floor_half(n - 3);
  const int c = floor_half(n - 2);
  b.sharp = true;
  if (n % 2 == 1) {
    // u P(u^2) has degree 4c+5, so 4c+6 derivatives remove it; K and E
    // coefficients start at degrees 4a+6 and 4a+4 and gain 4 per derivative.
    b.derivative_order = 4 * c + 6;
    b.deg_phi = 4 * a + 6 + 4 * b.derivative_order;
    b.deg_psi = 4 * a + 4 + 4 * b.derivative_order;
  } else {
    b.derivative_order = 4 * c + 5;
    b.deg_phi = 4 * a + 7 + 4 * b.derivative_order;
    b.deg_psi = 4 * a + 5 + 4 * b.derivative_order;
  }
  b.phi_psi_bound = phi_bound(b.deg_phi, b.deg_psi);
  b.bound = b.phi_psi_bound + b.derivative_order;
  return b;
}

int zero_bound(int n) { return zero_bound_accounting(n).bound; }

Json to_json(const BoundAccounting& b) {
  Json j{{"n", b.n}, {"bound", b.bound}, {"sharp", b.sharp}};
  if (b.sharp && b.n >= 3) {
    j["derivative_order"] = b.derivative_order;
    j["deg_phi"] = b.deg_phi;
    j["deg_psi"] = b.deg_psi;
    j["phi_psi_bound"] = b.phi_psi_bound;
    j["rolle_additions"] = b.derivative_order;
  }
  return j;
}

Json to_json(const ZeroReport& r) {
  Json zeros = Json::array();
  for (const auto& z : r.zeros) {
    zeros.push_back({{"u", format_real(z.u)},
                     {"multiplicity", z.multiplicity},
                     {"I", format_real(z.value)},
                     {"dI", format_real(z.slope)},
                     {"d2I", format_real(z.curvature)}});
  }
  Json tangencies = Json::array();
  for (const auto& t : r.tangencies) {
    tangencies.push_back(
        {{"u", format_real(t.u)}, {"I", format_real(t.value)}, {"d2I", format_real(t.curvature)}});
  }
  return Json{{"identically_zero", r.identically_zero},
              {"zeros", std::move(zeros)},
              {"total_multiplicity", r.total_multiplicity()},
              {"tangencies", std::move(tangencies)},
              {"bound", to_json(r.bound)},
              {"diagnostics",
               {{"grid", r.options.grid},
                {"delta", format_real(r.options.delta)},
                {"tol", format_real(r.options.tol)},
                {"certify_rel", format_real(r.options.certify_rel)},
                {"merge_width", format_real(r.options.merge_width)},
                {"window", format_real(r.options.window)},
                {"grid_max", format_real(r.grid_max)},
                {"noise_floor", format_real(r.noise_floor)}}}};
}

std::vector<std::string> preset_names() { return {"1", "2", "3", "3b", "1c", "2c", "3c", "3bc"}; }

PerturbationSpec preset(std::string_view name, double epsilon) {
  PerturbationSpec s;
  s.epsilon = epsilon;
  if (name == "1" || name == "1c") {
    const auto ke = elliptic::agm_KE(2.0 * std::sqrt(6.0) / 5.0);
    const double a1 = 2.0 * std::sqrt(5.0) * pi;
    s.a = {25.0 * ke.E - 13.0 * ke.K, name == "1" ? a1 : -a1};
  } else if (name == "2" || name == "2c") {
    const auto ke = elliptic::agm_KE(std::sqrt(15.0) / 4.0);
    const double a1 = 9.0 * pi / 128.0;
    s.a = {-0.5 * ke.E, name == "2" ? -a1 : a1, 17.0 / 64.0 * ke.K};
  } else if (name == "3" || name == "3b") {
    const auto ke = elliptic::agm_KE(4.0 * std::sqrt(5.0) / 9.0);
    const double K = ke.K;
    const double E = ke.E;
    const double base = (8019.0 * E * E - 13020.0 * K * E + 4121.0 * K * K) / (6.0 * pi);
    s.a = {name == "3" ? base - 1.0 : base, -149.0 * K - 219.0 * E, 1.0, 125.0 * K - 405.0 * E};
  } else if (name == "3c" || name == "3bc") {
    // a1, a3 and the a0 + a2 combination make I and I' vanish together at u = 1/3.
    const auto ke = elliptic::agm_KE(4.0 * std::sqrt(5.0) / 9.0);
    const double K = ke.K;
    const double E = ke.E;
    const double base = 10.0 / pi * (K * K + 82.0 * K * E - 243.0 * E * E);
    s.a = {name == "3c" ? base - 1.0 : base, 15.0 * K + 105.0 * E, 1.0, 125.0 * K - 405.0 * E};
  } else {
    throw DomainError(Module::analysis, "unknown preset '" + std::string(name) + "'");
  }
  return s;
}

PresetTarget preset_target(std::string_view name) {
  if (name == "1" || name == "1c") return {1, {1.0 / std::sqrt(5.0)}, std::nullopt};
  if (name == "2" || name == "2c") return {1, {0.5}, std::nullopt};
  if (name == "3" || name == "3c") return {0, {}, 1.0 / 3.0};
  if (name == "3b") return {2, {}, std::nullopt};  // on either side of 1/3
  if (name == "3bc") return {2, {0.26100068928287588, 0.45880116352989543}, std::nullopt};
  throw DomainError(Module::analysis, "unknown preset '" + std::string(name) + "'");
}

}  // namespace isochrone::analysis
