#pragma once

#include <array>

#include "isochrone/exact/json.hpp"
#include "isochrone/reduction.hpp"

namespace isochrone::elliptic {

using exact::GeneratorIndex;
using exact::RealPoly;
using exact::Var;
using reduction::ExactBasis;
using reduction::RealBasis;

/// Complete elliptic integrals of the first and second kind at modulus k.
struct EllipticPair {
  double K = 0.0;
  double E = 0.0;
  double k = 0.0;
};

/// K(k), E(k) by the arithmetic-geometric mean. DomainError unless 0 <= k < 1.
EllipticPair agm_KE(double k);

/// Same pair when the complementary modulus k' = sqrt(1-k^2) is the quantity
/// known accurately (k' = u^2 on the annulus). DomainError unless 0 < k' <= 1.
EllipticPair agm_KE_complement(double kprime);

/// Level h of the period annulus in its three coordinates.
/// u = sqrt(8h+1-4 sqrt(4h^2+h)), k = sqrt(1-u^4), a = 1/u, b = u.
struct CurveParams {
  double h = 0.0;
  double u = 0.0;
  double k = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// DomainError for h <= 0 (or non-finite).
CurveParams params_from_h(double h);

/// The modulus written directly in h:
/// k = 2 sqrt(2) sqrt( sqrt(4h^2+h) / (8h+1+4 sqrt(4h^2+h)) ).
double modulus_from_h(double h);

/// h = (1-u^2)^2 / (16 u^2); DomainError unless 0 < u < 1.
double h_from_u(double u);

/// Levels below this are evaluated from the centre expansion of the
/// generators instead of the closed forms, which cancel to O(h) there.
inline constexpr double kSeriesSwitchH = 1e-6;

/// Basis generators in the order I_{0,1}, I_{1,1}, I_{2,1}, I_{3,1}, I_{0,3}.
using GeneratorValues = std::array<double, 5>;

GeneratorValues generators_at_h(double h);

/// Evaluates at u directly, avoiding the h round trip (u in (0,1)).
GeneratorValues generators_at_u(double u);

/// One of I_{0,1}, I_{1,1}, I_{2,1}, I_{3,1}, I_{0,3} at level h > 0;
/// DomainError for any other index.
double eval_generator(GeneratorIndex g, double h);

/// Σ coeff(h) · generator(h) over the five basis slots.
double eval_I_h(const RealBasis& c, double h);
double eval_I_h(const ExactBasis& c, double h);

/// Same combination evaluated at a point u of (0,1).
double eval_I_at_u(const RealBasis& c, double u);

/// u^{-d} (1-u^4)^{-l} [P(u) + Q(u) K(k) + R(u) E(k)] with k = sqrt(1-u^4).
/// Differentiation keeps the (1-u^4) power as a separate exponent l.
struct UForm {
  int d = 0;
  int l = 0;
  RealPoly P{Var::u};
  RealPoly Q{Var::u};
  RealPoly R{Var::u};

  double operator()(double u) const;
};

UForm to_u_form(const RealBasis& c);

/// l-th derivative in u, by the Picard-Fuchs system
///   dK/du = (2u^4 K - 2E) / (u (1-u^4)),   dE/du = 2u^3 (K - E) / (1-u^4).
UForm pf_derivative(const UForm& f, int l);

/// {"d":3,"l":0,"P":["..."],"Q":[...],"R":[...]} with 17-digit decimal strings.
Json to_json(const UForm& f);

}  // namespace isochrone::elliptic
