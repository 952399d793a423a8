#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "isochrone/exact/polynomial.hpp"

namespace isochrone::exact {

/// Index (i, j) of the integral I_{i,j}(h) = ∮ (x-1) x^{i-3} y^j dx over the
/// level oval H = h.
struct GeneratorIndex {
  int i = 0;
  int j = 1;

  friend auto operator<=>(const GeneratorIndex&, const GeneratorIndex&) = default;
};

std::string to_string(GeneratorIndex g);

/// Finite sum Σ c_g(h) · I_g with exact polynomial coefficients in h. Zero
/// coefficients are never stored.
class GeneratorCombo {
 public:
  using Terms = std::map<GeneratorIndex, RationalPoly>;

  GeneratorCombo() = default;
  GeneratorCombo(std::initializer_list<std::pair<const GeneratorIndex, RationalPoly>> terms);

  static GeneratorCombo single(GeneratorIndex g);

  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  bool contains(GeneratorIndex g) const { return terms_.count(g) != 0; }

  /// Coefficient of g; the zero polynomial in h when absent.
  RationalPoly coefficient(GeneratorIndex g) const;

  GeneratorCombo operator+(const GeneratorCombo& other) const;
  GeneratorCombo operator-(const GeneratorCombo& other) const;
  GeneratorCombo scaled(const RationalPoly& weight) const;
  GeneratorCombo scaled(const Rational& factor) const;
  GeneratorCombo without(GeneratorIndex g) const;

  /// Replaces I_g by `replacement` everywhere: c_g·I_g -> c_g·replacement.
  GeneratorCombo substitute(GeneratorIndex g, const GeneratorCombo& replacement) const;

  friend bool operator==(const GeneratorCombo&, const GeneratorCombo&) = default;

 private:
  void accumulate(GeneratorIndex g, const RationalPoly& p);

  Terms terms_;
};

/// Σ weights[k] · combos[k]. Weights must be polynomials in h and the two
/// lists must have equal length (StructuralError otherwise).
GeneratorCombo combo_linear(std::span<const GeneratorCombo> combos, std::span<const RationalPoly> weights);

}  // namespace isochrone::exact
