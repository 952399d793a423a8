#include "isochrone/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "isochrone/error.hpp"
#include "isochrone/format.hpp"

namespace isochrone::elliptic {

namespace {

constexpr double pi = std::numbers::pi;

// Centre expansions of I_{1,1}/π and I_{3,1}/π in powers of h.
constexpr std::array<double, 7> kSeries11{0.0, 4.0, -2.0, 3.0, -25.0 / 4, 245.0 / 16, -1323.0 / 32};
constexpr std::array<double, 7> kSeries31{0.0, 4.0, 6.0, -5.0, 35.0 / 4, -315.0 / 16, 1617.0 / 32};
// I_{0,3} is O(h^2) and the four-term sum behind it cancels to ~1e-16/h^2, so
// it keeps its own expansion up to a much larger level.
constexpr std::array<double, 7> kSeries03{0.0, 0.0, -3.0, 1.5, -15.0 / 8, 105.0 / 32, -441.0 / 64};
constexpr double kSeries03SwitchH = 1e-3;

double series(const std::array<double, 7>& c, double h) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * h + *it;
  return pi * acc;
}

// u = sqrt(4h+1) - 2 sqrt(h), written without the subtraction.
double u_of_h(double h) { return 1.0 / (std::sqrt(4.0 * h + 1.0) + 2.0 * std::sqrt(h)); }

GeneratorValues assemble(double h, double i11, double i31) {
  const double i01 = -4.0 * pi * h;
  return {i01, i11, i01, i31, -0.75 * (i31 + i01 + i11 + i01)};
}

GeneratorValues closed_forms(double u, double h) {
  const EllipticPair ke = agm_KE_complement(u * u);
  const double u4 = u * u * u * u;
  const double i11 = ((u4 + 1.0) * ke.K - 2.0 * ke.E) / u;
  const double i31 = ((1.0 + u4) * ke.E - 2.0 * u4 * ke.K) / (3.0 * u * u * u);
  GeneratorValues g = assemble(h, i11, i31);
  if (h < kSeries03SwitchH) g[4] = series(kSeries03, h);
  return g;
}

GeneratorValues centre_series(double h) {
  GeneratorValues g = assemble(h, series(kSeries11, h), series(kSeries31, h));
  g[4] = series(kSeries03, h);
  return g;
}

template <class Basis>
double combine(const Basis& c, const GeneratorValues& g, double h) {
  return c.p01.eval(h) * g[0] + c.p11.eval(h) * g[1] + c.p21.eval(h) * g[2] + c.p31.eval(h) * g[3] +
         c.p03.eval(h) * g[4];
}

// S(u) with p(h(u)) = u^{-2m} S(u), m = deg p.
RealPoly h_poly_in_u(const RealPoly& p) {
  const int m = p.degree();
  RealPoly out(Var::u);
  if (m < 0) return out;
  const RealPoly one_minus_u2(Var::u, {1.0, 0.0, -1.0});
  RealPoly power = RealPoly::constant(Var::u, 1.0);  // (1-u^2)^{2k} / 16^k
  for (int k = 0; k <= m; ++k) {
    out = out + power.shifted(2 * (m - k)).scaled(p.coefficient(k));
    power = (power * one_minus_u2 * one_minus_u2).scaled(1.0 / 16.0);
  }
  return out;
}

UForm aligned_sum(const UForm& a, const UForm& b) {
  if (a.l != b.l) throw ConsistencyError(Module::elliptic, "UForm sum with different (1-u^4) exponents");
  const int d = std::max(a.d, b.d);
  UForm out;
  out.d = d;
  out.l = a.l;
  out.P = a.P.shifted(d - a.d) + b.P.shifted(d - b.d);
  out.Q = a.Q.shifted(d - a.d) + b.Q.shifted(d - b.d);
  out.R = a.R.shifted(d - a.d) + b.R.shifted(d - b.d);
  return out;
}

int low_order(const RealPoly& p) {
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coefficient(k) != 0.0) return k;
  }
  return 1 << 20;
}

RealPoly drop_low(const RealPoly& p, int s) {
  if (p.is_zero()) return p;
  const auto c = p.coefficients();
  return RealPoly(Var::u, std::vector<double>(c.begin() + s, c.end()));
}

// Divides P, Q, R by the largest common power of u, lowering d (not below 0).
UForm normalized(UForm f) {
  const int s = std::min({low_order(f.P), low_order(f.Q), low_order(f.R), f.d});
  if (s <= 0) return f;
  f.P = drop_low(f.P, s);
  f.Q = drop_low(f.Q, s);
  f.R = drop_low(f.R, s);
  f.d -= s;
  return f;
}

UForm generator_form(int slot) {
  const double third = 1.0 / 3.0;
  UForm g;
  switch (slot) {
    case 0:
    case 2:  // -4πh = -(π/4) (1-u^2)^2 u^{-2}
      g.d = 2;
      g.P = RealPoly(Var::u, {-pi / 4, 0.0, pi / 2, 0.0, -pi / 4});
      break;
    case 1:  // u^{-1} [(u^4+1) K - 2E]
      g.d = 1;
      g.Q = RealPoly(Var::u, {1.0, 0.0, 0.0, 0.0, 1.0});
      g.R = RealPoly::constant(Var::u, -2.0);
      break;
    case 3:  // u^{-3} [(1+u^4) E - 2u^4 K] / 3
      g.d = 3;
      g.Q = RealPoly::monomial(Var::u, -2.0 * third, 4);
      g.R = RealPoly(Var::u, {third, 0.0, 0.0, 0.0, third});
      break;
    default: {  // -(3/4)(I_{3,1} + I_{0,1} + I_{1,1} + I_{2,1})
      UForm s = aligned_sum(aligned_sum(generator_form(3), generator_form(0)),
                            aligned_sum(generator_form(1), generator_form(2)));
      s.P = s.P.scaled(-0.75);
      s.Q = s.Q.scaled(-0.75);
      s.R = s.R.scaled(-0.75);
      g = s;
    }
  }
  return g;
}

UForm times_h_poly(const UForm& g, const RealPoly& p) {
  const RealPoly s = h_poly_in_u(p);
  UForm out;
  out.d = g.d + 2 * std::max(p.degree(), 0);
  out.P = g.P * s;
  out.Q = g.Q * s;
  out.R = g.R * s;
  return out;
}

}  // namespace

EllipticPair agm_KE(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError(Module::elliptic, "modulus k=" + format_real(k) + " outside [0,1); K diverges at k=1");
  }
  EllipticPair out = agm_KE_complement(std::sqrt((1.0 - k) * (1.0 + k)));
  out.k = k;
  return out;
}

EllipticPair agm_KE_complement(double kprime) {
  if (!(kprime > 0.0 && kprime <= 1.0)) {
    throw DomainError(Module::elliptic, "complementary modulus k'=" + format_real(kprime) + " outside (0,1]");
  }
  // a_{n+1} = (a+b)/2, b_{n+1} = sqrt(ab), c_{n+1} = (a-b)/2;
  // K = π / (2 a_N), E = K (1 - Σ 2^{n-1} c_n^2) with c_0 = k.
  double a = 1.0;
  double b = kprime;
  const double k2 = (1.0 - kprime) * (1.0 + kprime);
  double sum = 0.5 * k2;
  double weight = 0.5;
  for (int it = 0; it < 64 && std::abs(a - b) > 4.0 * std::numeric_limits<double>::epsilon() * a; ++it) {
    const double c = 0.5 * (a - b);
    const double next_b = std::sqrt(a * b);
    a = 0.5 * (a + b);
    b = next_b;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double K = pi / (2.0 * a);
  return {K, K * (1.0 - sum), std::sqrt(k2)};
}

CurveParams params_from_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError(Module::elliptic, "energy level h=" + format_real(h) + " must be positive");
  }
  const double u = u_of_h(h);
  // 1 - u^4 = (1-u^2)(1+u^2) and 1 - u^2 = 4u sqrt(h).
  const double k = std::sqrt(4.0 * u * std::sqrt(h) * (1.0 + u * u));
  return {h, u, k, 1.0 / u, u};
}

double modulus_from_h(double h) {
  if (!(h > 0.0)) throw DomainError(Module::elliptic, "energy level h=" + format_real(h) + " must be positive");
  const double r = std::sqrt(4.0 * h * h + h);
  return 2.0 * std::sqrt(2.0) * std::sqrt(r / (8.0 * h + 1.0 + 4.0 * r));
}

double h_from_u(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(Module::elliptic, "u=" + format_real(u) + " outside (0,1)");
  const double w = (1.0 - u) * (1.0 + u);
  return w * w / (16.0 * u * u);
}

GeneratorValues generators_at_h(double h) {
  const CurveParams p = params_from_h(h);
  return h < kSeriesSwitchH ? centre_series(h) : closed_forms(p.u, h);
}

GeneratorValues generators_at_u(double u) {
  const double h = h_from_u(u);
  return h < kSeriesSwitchH ? centre_series(h) : closed_forms(u, h);
}

double eval_generator(GeneratorIndex g, double h) {
  int slot = -1;
  if (g == reduction::kI01) slot = 0;
  if (g == reduction::kI11) slot = 1;
  if (g == reduction::kI21) slot = 2;
  if (g == reduction::kI31) slot = 3;
  if (g == reduction::kI03) slot = 4;
  if (slot < 0) {
    throw DomainError(Module::elliptic, exact::to_string(g) + " has no closed form; reduce it to the basis first");
  }
  return generators_at_h(h)[static_cast<std::size_t>(slot)];
}

double eval_I_h(const RealBasis& c, double h) {
  if (c.is_zero()) return 0.0;
  return combine(c, generators_at_h(h), h);
}

double eval_I_h(const ExactBasis& c, double h) { return eval_I_h(reduction::to_real(c), h); }

double eval_I_at_u(const RealBasis& c, double u) {
  const double h = h_from_u(u);
  if (c.is_zero()) return 0.0;
  return combine(c, generators_at_u(u), h);
}

double UForm::operator()(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(Module::elliptic, "u=" + format_real(u) + " outside (0,1)");
  const EllipticPair ke = agm_KE_complement(u * u);
  const double u4 = u * u * u * u;
  const double bracket = P.eval(u) + Q.eval(u) * ke.K + R.eval(u) * ke.E;
  return bracket * std::pow(u, -d) * std::pow(1.0 - u4, -l);
}

UForm to_u_form(const RealBasis& c) {
  const RealPoly* coeffs[5] = {&c.p01, &c.p11, &c.p21, &c.p31, &c.p03};
  UForm out;
  for (int slot = 0; slot < 5; ++slot) {
    if (coeffs[slot]->is_zero()) continue;
    out = aligned_sum(out, times_h_poly(generator_form(slot), *coeffs[slot]));
  }
  return normalized(out);
}

UForm pf_derivative(const UForm& f, int l) {
  if (l < 0) throw DomainError(Module::elliptic, "derivative order must be >= 0, got " + std::to_string(l));
  UForm cur = f;
  const RealPoly u4 = RealPoly::monomial(Var::u, 1.0, 4);
  const RealPoly one_minus_u4(Var::u, {1.0, 0.0, 0.0, 0.0, -1.0});
  const RealPoly u_times = one_minus_u4.shifted(1);  // u (1 - u^4)
  for (int step = 0; step < l; ++step) {
    // d/du of u^{-d} (1-u^4)^{-l} is u^{-d-1} (1-u^4)^{-l-1} · A.
    const RealPoly A = one_minus_u4.scaled(-static_cast<double>(cur.d)) + u4.scaled(4.0 * cur.l);
    UForm next;
    next.d = cur.d + 1;
    next.l = cur.l + 1;
    next.P = A * cur.P + u_times * cur.P.derivative();
    next.Q = A * cur.Q + u_times * cur.Q.derivative() + (cur.Q + cur.R) * u4.scaled(2.0);
    next.R = A * cur.R + u_times * cur.R.derivative() - cur.Q.scaled(2.0) - cur.R * u4.scaled(2.0);
    cur = normalized(next);
  }
  return cur;
}

Json to_json(const UForm& f) {
  auto coeffs = [](const RealPoly& p) {
    Json arr = Json::array();
    for (double c : p.coefficients()) arr.push_back(format_real(c));
    return arr;
  };
  return Json{{"d", f.d}, {"l", f.l}, {"P", coeffs(f.P)}, {"Q", coeffs(f.Q)}, {"R", coeffs(f.R)}};
}

}  // namespace isochrone::elliptic
