#include "isochrone/verify.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "isochrone/analysis.hpp"
#include "isochrone/dynamics.hpp"
#include "isochrone/elliptic.hpp"
#include "isochrone/error.hpp"
#include "isochrone/quadrature.hpp"
#include "isochrone/reduction.hpp"

namespace isochrone::verify {

namespace {

using exact::GeneratorCombo;
using exact::Rational;
using exact::RationalPoly;
using exact::Var;
using reduction::ExactBasis;

constexpr double pi = std::numbers::pi;

RationalPoly hp(std::initializer_list<Rational> c) { return RationalPoly(Var::h, c); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string sci(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

std::string fix(double x, int digits = 10) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// Runs body, times it, and folds a runtime budget into the verdict.
CheckResult timed(std::string id, std::string title, double budget_s,
                  const std::function<bool(std::ostringstream&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.passed = body(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > budget_s) {
    r.passed = false;
    detail << "; over the " << budget_s << " s budget";
  }
  r.detail = detail.str();
  return r;
}

// 1 ---------------------------------------------------------------------------

bool exact_identities(std::ostringstream& out) {
  const GeneratorCombo i23{{{1, 3}, hp({2})},
                           {{0, 3}, hp({Rational(-3, 4)})},
                           {{2, 1}, hp({Rational(9, 16), Rational(3)})},
                           {{0, 1}, hp({Rational(-3, 16)})},
                           {{1, 1}, hp({Rational(3, 16)})},
                           {{3, 1}, hp({Rational(3, 16)})}};
  const GeneratorCombo i33{{{1, 3}, hp({3})},
                           {{0, 3}, hp({Rational(-27, 20)})},
                           {{3, 1}, hp({Rational(63, 80), Rational(12, 5)})},
                           {{2, 1}, hp({Rational(93, 80), Rational(27, 5)})},
                           {{0, 1}, hp({Rational(-27, 80)})},
                           {{1, 1}, hp({Rational(3, 16)})},
                           {{4, 1}, hp({Rational(3, 20)})}};
  const GeneratorCombo i31_step{{{1, 1}, hp({Rational(-4, 7), Rational(16, 7)})},
                                {{-1, 1}, hp({Rational(-1, 7)})},
                                {{-1, 3}, hp({Rational(-4, 7)})},
                                {{1, 3}, hp({Rational(-4, 7)})},
                                {{2, 1}, hp({Rational(-6, 7)})},
                                {{0, 1}, hp({Rational(-6, 7)})}};
  ExactBasis i31;
  i31.p01 = hp({-1});
  i31.p11 = hp({-1});
  i31.p21 = hp({-1});
  i31.p03 = hp({Rational(-4, 3)});

  const bool a = reduction::rewrite_26(2, 3) == i23;
  const bool b = reduction::reduce_k3(3) == i33;
  const bool c = reduction::rewrite_25(3, 1) == i31_step;
  const bool d = reduction::reduce_k1(3) == i31;
  out << "I_{2,3} " << (a ? "exact" : "MISMATCH") << ", I_{3,3} " << (b ? "exact" : "MISMATCH")
      << ", I_{3,1} one-step " << (c ? "exact" : "MISMATCH") << ", I_{3,1} reduced " << (d ? "exact" : "MISMATCH");
  return a && b && c && d;
}

// 2 ---------------------------------------------------------------------------

bool cancellation_and_degrees(std::ostringstream& out) {
  bool ok = true;
  int worst_k = 0;
  for (int k = 3; k <= 25; ++k) {
    const GeneratorCombo raw = reduction::reduce_k1_combo(k);
    bool clean = true;
    for (const auto& [g, p] : raw.terms()) {
      if (g != reduction::kI01 && g != reduction::kI11 && g != reduction::kI21 && g != reduction::kI03) clean = false;
    }
    const auto d = reduction::degree_profile(reduction::reduce_k1(k));
    const auto bound = reduction::degree_bound_k1(k);
    const bool within = d.p01 <= bound.p01 && d.p11 <= bound.p11 && d.p21 <= bound.p21 && d.last <= bound.last;
    if (!clean || !within) {
      ok = false;
      worst_k = k;
      out << "k=" << k << (clean ? "" : " extended generators left") << (within ? "" : " degree bound exceeded")
          << "; ";
    }
  }
  const auto d25 = reduction::degree_profile(reduction::reduce_k1(25));
  out << "k=3..25 " << (ok ? "clean" : "FAILED at k=" + std::to_string(worst_k)) << "; k=25 degrees (" << d25.p01
      << "," << d25.p11 << "," << d25.p21 << "," << d25.last << ") vs bound (11,11,11,11)";
  return ok;
}

// 3 ---------------------------------------------------------------------------

bool closed_forms_vs_oracle(std::ostringstream& out) {
  const exact::GeneratorIndex gens[] = {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {0, 3}};
  double worst = 0.0;
  double worst_calibration = 0.0;
  for (double h : {0.1, 4.0 / 9.0, 1.0, 5.0}) {
    for (const auto g : gens) {
      const double q = quadrature::quad_Iij(g.i, g.j, h).value;
      worst = std::max(worst, rel_err(elliptic::eval_generator(g, h), q));
      if (g.i == 0 && g.j == 1) worst_calibration = std::max(worst_calibration, rel_err(q, -4.0 * pi * h));
    }
  }
  out << "max rel closed vs oracle " << sci(worst) << " (tol 1e-6); oracle I_{0,1} vs -4πh " << sci(worst_calibration)
      << " (tol 1e-8)";
  return worst <= 1e-6 && worst_calibration <= 1e-8;
}

// 4 ---------------------------------------------------------------------------

bool reduction_vs_oracle(std::ostringstream& out) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pick_i(-1, 12);
  std::uniform_int_distribution<int> pick_j(0, 1);
  std::uniform_real_distribution<double> pick_h(0.1, 5.0);
  double worst = 0.0;
  std::string worst_case;
  for (int trial = 0; trial < 20; ++trial) {
    const int i = pick_i(rng);
    const int j = pick_j(rng) == 0 ? 1 : 3;
    const double h = pick_h(rng);
    const double reduced = elliptic::eval_I_h(reduction::reduce_generator(i, j), h);
    const double oracle = quadrature::quad_Iij(i, j, h).value;
    const double e = rel_err(reduced, oracle);
    if (e >= worst) {
      worst = e;
      worst_case = "I_{" + std::to_string(i) + "," + std::to_string(j) + "} at h=" + fix(h, 6);
    }
  }
  out << "20 draws, max rel " << sci(worst) << " at " << worst_case << " (tol 1e-6)";
  return worst <= 1e-6;
}

// 5 / 5c ----------------------------------------------------------------------

bool check_simple_preset(std::string_view name, std::ostringstream& out) {
  const auto target = analysis::preset_target(name);
  const auto report = analysis::find_zeros(analysis::preset(name));
  out << "set " << name << ": ";
  if (report.identically_zero) {
    out << "integral identically zero; ";
    return false;
  }
  out << report.zeros.size() << " zero(s)";
  for (const auto& z : report.zeros) out << " u=" << fix(z.u, 12) << "(m" << z.multiplicity << ")";
  const double want = target.simple.front();
  const bool ok = report.zeros.size() == 1 && report.zeros[0].multiplicity == 1 &&
                  std::abs(report.zeros[0].u - want) <= 1e-8;
  out << ", want simple u=" << fix(want, 12) << (ok ? "" : " MISSING") << "; ";
  return ok;
}

bool check_double_preset(std::string_view name, std::ostringstream& out) {
  const analysis::ZeroOptions opts;
  const auto report = analysis::find_zeros(analysis::preset(name), opts);
  const double want = *analysis::preset_target(name).double_zero;
  out << "set " << name << ": ";
  for (const auto& z : report.zeros) out << " u=" << fix(z.u, 12) << "(m" << z.multiplicity << ")";
  if (report.zeros.empty()) out << "no zeros";
  for (const auto& z : report.zeros) {
    if (z.multiplicity != 2 || std::abs(z.u - want) > 1e-8) continue;
    const double w = opts.window;
    double window_max = 0.0;
    const auto spec = analysis::preset(name);
    for (int k = -50; k <= 50; ++k) {
      const double u = z.u + w * k / 50.0;
      window_max = std::max(window_max, std::abs(analysis::eval_I_u(spec, u)));
    }
    const double local_scale = 2.0 * window_max / (w * w);
    const bool ok = std::abs(z.value) <= 1e-9 && std::abs(z.slope) <= 1e-9 && std::abs(z.curvature) >= 0.1 * local_scale;
    out << ", |I|=" << sci(std::abs(z.value)) << " |I'|=" << sci(std::abs(z.slope)) << " |I''|=" << fix(std::abs(z.curvature), 6)
        << " vs 0.1*scale " << fix(0.1 * local_scale, 6) << "; ";
    return ok && report.zeros.size() == 1;
  }
  out << ", want double u=" << fix(want, 12) << " MISSING; ";
  return false;
}

bool published_zeros(std::ostringstream& out) {
  const bool a = check_simple_preset("1", out);
  const bool b = check_simple_preset("2", out);
  const bool c = check_double_preset("3", out);
  return a && b && c;
}

bool designed_zeros(std::ostringstream& out) {
  const bool a = check_simple_preset("1c", out);
  const bool b = check_simple_preset("2c", out);
  const bool c = check_double_preset("3c", out);
  const auto r = analysis::find_zeros(analysis::preset("3bc"));
  const auto t = analysis::preset_target("3bc");
  bool d = r.zeros.size() == 2;
  for (std::size_t k = 0; d && k < 2; ++k) d = r.zeros[k].multiplicity == 1 && std::abs(r.zeros[k].u - t.simple[k]) <= 1e-8;
  out << "set 3bc: " << r.zeros.size() << " simple zero(s)" << (d ? "" : " MISMATCH");
  return a && b && c && d;
}

// 6 ---------------------------------------------------------------------------

bool bound_arithmetic(std::ostringstream& out) {
  const int b3 = analysis::zero_bound(3);
  const int b4 = analysis::zero_bound(4);
  const int b5 = analysis::zero_bound(5);
  bool ok = b3 == 65 && b4 == 94 && b5 == 109;
  out << "bound(3)=" << b3 << " bound(4)=" << b4 << " bound(5)=" << b5 << "; ";
  // The φ/ψ degrees after 4[(n-2)/2]+6 derivatives, odd n, against 8[(n-3)/2]+32[(n-2)/2]+59.
  for (int n = 3; n <= 25; n += 2) {
    const auto acc = analysis::zero_bound_accounting(n);
    const int formula = 8 * ((n - 3) / 2) + 32 * ((n - 2) / 2) + 59;
    const int via_phi = analysis::phi_bound(acc.deg_phi, acc.deg_psi);
    if (via_phi != formula || acc.bound != 22 * n - 1) ok = false;
    if (n == 3) out << "n=3 phi_bound(" << acc.deg_phi << "," << acc.deg_psi << ")=" << via_phi << " formula=" << formula;
  }
  for (int n = 4; n <= 24; n += 2) {
    if (analysis::zero_bound(n) != 22 * n + 6) ok = false;
  }
  out << "; formula at n=4 gives " << (8 * 0 + 32 * 1 + 59) << "; odd n 3..25 and even n 4..24 consistent: "
      << (ok ? "yes" : "NO");
  return ok;
}

// 7 ---------------------------------------------------------------------------

bool picard_fuchs(std::ostringstream& out) {
  using elliptic::UForm;
  UForm K;
  K.Q = exact::RealPoly::constant(Var::u, 1.0);
  UForm E;
  E.R = exact::RealPoly::constant(Var::u, 1.0);
  const auto spec = analysis::preset("3");
  const UForm I3 = elliptic::to_u_form(reduction::assemble_I(spec));
  auto I3_direct = [&](double u) { return analysis::eval_I_u(spec, u); };

  double worst = 0.0;
  auto compare = [&](const std::function<double(double)>& f, const UForm& form) {
    const UForm d1 = elliptic::pf_derivative(form, 1);
    const UForm d2 = elliptic::pf_derivative(form, 2);
    for (double u : {0.2, 0.5, 0.8}) {
      const double s1 = 1e-5;
      const double fd1 = (f(u + s1) - f(u - s1)) / (2 * s1);
      const double s2 = 1e-4;
      const double fd2 = (f(u + s2) - 2 * f(u) + f(u - s2)) / (s2 * s2);
      worst = std::max({worst, rel_err(d1(u), fd1), rel_err(d2(u), fd2)});
    }
  };
  compare([&](double u) { return K(u); }, K);
  compare([&](double u) { return E(u); }, E);
  compare(I3_direct, I3);
  out << "K, E and the cubic-perturbation I(u), first and second derivatives at u=0.2,0.5,0.8: max rel "
      << sci(worst) << " (tol 1e-6)";
  return worst <= 1e-6;
}

// 8 ---------------------------------------------------------------------------

bool unperturbed_dynamics(std::ostringstream& out) {
  const PerturbationSpec none{{0.0}, 0.0};
  dynamics::OrbitOptions opts;
  opts.record = true;
  double worst_drift = 0.0;
  double worst_period = 0.0;
  bool returned = true;
  for (double x0 : {-0.2, -0.447, -0.7}) {
    const auto orbit = dynamics::integrate_orbit({x0, 0.0, 0.0}, none, opts);
    if (orbit.status != dynamics::OrbitStatus::returned) {
      returned = false;
      continue;
    }
    const double H0 = dynamics::first_integral({x0, 0.0, 0.0});
    for (const auto& s : orbit.trajectory) worst_drift = std::max(worst_drift, rel_err(dynamics::first_integral(s), H0));
    worst_period = std::max(worst_period, rel_err(orbit.crossings.front().t, 2.0 * pi));
  }
  out << "max rel H drift " << sci(worst_drift) << " (tol 1e-9); max rel |T-2π| " << sci(worst_period)
      << " (tol 1e-7)";
  return returned && worst_drift <= 1e-9 && worst_period <= 1e-7;
}

// 9 / 9c ----------------------------------------------------------------------

bool cycles_match(std::string_view name, std::ostringstream& out) {
  const auto spec = analysis::preset(name, 1e-3);
  const auto cycles = dynamics::detect_limit_cycles(spec);
  const auto target = analysis::preset_target(name);
  out << "set " << name << ": " << cycles.size() << " cycle(s)";
  for (const auto& c : cycles) out << " h=" << fix(c.h_level, 6);
  bool ok = cycles.size() == target.simple_count;
  for (std::size_t k = 0; ok && k < target.simple.size(); ++k) {
    // Cycles come out in increasing u, zeros in increasing u.
    const double want = elliptic::h_from_u(target.simple[k]);
    ok = std::abs(cycles[k].h_level - want) <= 0.05 * want;
    out << " vs h*=" << fix(want, 6);
  }
  out << (ok ? "" : " MISMATCH") << "; ";
  return ok;
}

// sign(d) = σ sign(ε I) with one σ for all sample points.
bool sign_correlation(std::string_view name, std::ostringstream& out) {
  const auto spec = analysis::preset(name, 1e-3);
  int sigma = 0;
  bool ok = true;
  for (double u : {0.25, 0.35, 0.55, 0.8}) {
    const double d = dynamics::return_map(-u, spec).x1 + u;
    const double I = analysis::eval_I_u(spec, u);
    const int s = ((d > 0) == (spec.epsilon * I > 0)) ? 1 : -1;
    if (sigma == 0) sigma = s;
    if (s != sigma) ok = false;
  }
  out << "set " << name << " sign(d) = " << (sigma > 0 ? "+" : "-") << "sign(εI) at u=0.25,0.35,0.55,0.8: "
      << (ok ? "consistent" : "INCONSISTENT") << "; ";
  return ok;
}

bool published_cycles(std::ostringstream& out) {
  const bool a = cycles_match("1", out);
  const bool b = cycles_match("2", out);
  const bool c = cycles_match("3b", out);
  const bool d = sign_correlation("1", out);
  return a && b && c && d;
}

bool designed_cycles(std::ostringstream& out) {
  const bool a = cycles_match("1c", out);
  const bool b = cycles_match("2c", out);
  const bool c = cycles_match("3bc", out);
  const bool d = sign_correlation("1c", out);
  return a && b && c && d;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = [] {
    std::vector<Criterion> v;
    auto add = [&v](std::string id, std::string title, double budget, bool (*body)(std::ostringstream&)) {
      v.push_back({id, title, [id, title, budget, body] { return timed(id, title, budget, body); }});
    };
    add("1", "Exact identities", 1.0, exact_identities);
    add("2", "Cancellation and degree bounds, k=3..25", 5.0, cancellation_and_degrees);
    add("3", "Closed forms vs quadrature oracle", 30.0, closed_forms_vs_oracle);
    add("4", "Reduction vs quadrature oracle", 60.0, reduction_vs_oracle);
    add("5", "Zeros of the reference coefficient sets", 10.0, published_zeros);
    add("5c", "Zeros of the corrected coefficient sets", 10.0, designed_zeros);
    add("6", "Bound arithmetic", 1.0, bound_arithmetic);
    add("7", "Picard-Fuchs derivatives vs finite differences", 5.0, picard_fuchs);
    add("8", "Unperturbed dynamics: conservation and isochronicity", 10.0, unperturbed_dynamics);
    add("9", "Limit cycles of the reference coefficient sets", 120.0, published_cycles);
    add("9c", "Limit cycles of the corrected coefficient sets", 120.0, designed_cycles);
    return v;
  }();
  return all;
}

CheckResult run(std::string_view id) {
  for (const auto& c : criteria()) {
    if (c.id == id) return c.run();
  }
  throw DomainError(Module::cli, "unknown criterion '" + std::string(id) + "'");
}

std::string format_line(const CheckResult& r) {
  std::ostringstream s;
  s << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(3) << r.id << ' ' << r.title << " ("
    << std::fixed << std::setprecision(2) << r.seconds << " s): " << r.detail;
  return s.str();
}

}  // namespace isochrone::verify
