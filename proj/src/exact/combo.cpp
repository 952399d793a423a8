#include "isochrone/exact/combo.hpp"

#include "isochrone/error.hpp"

namespace isochrone::exact {

namespace {

void require_h(const RationalPoly& p, const char* what) {
  if (p.var() != Var::h) {
    throw StructuralError(Module::exactpoly, std::string(what) + " must be a polynomial in h, got one in u");
  }
}

}  // namespace

std::string to_string(GeneratorIndex g) {
  return "I_{" + std::to_string(g.i) + "," + std::to_string(g.j) + "}";
}

GeneratorCombo::GeneratorCombo(std::initializer_list<std::pair<const GeneratorIndex, RationalPoly>> terms) {
  for (const auto& [g, p] : terms) accumulate(g, p);
}

GeneratorCombo GeneratorCombo::single(GeneratorIndex g) {
  GeneratorCombo out;
  out.accumulate(g, RationalPoly::constant(Var::h, Rational(1)));
  return out;
}

RationalPoly GeneratorCombo::coefficient(GeneratorIndex g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? RationalPoly(Var::h) : it->second;
}

void GeneratorCombo::accumulate(GeneratorIndex g, const RationalPoly& p) {
  require_h(p, "generator coefficient");
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, p);
  if (inserted) return;
  it->second = it->second + p;
  if (it->second.is_zero()) terms_.erase(it);
}

GeneratorCombo GeneratorCombo::operator+(const GeneratorCombo& other) const {
  GeneratorCombo out(*this);
  for (const auto& [g, p] : other.terms_) out.accumulate(g, p);
  return out;
}

GeneratorCombo GeneratorCombo::operator-(const GeneratorCombo& other) const {
  GeneratorCombo out(*this);
  for (const auto& [g, p] : other.terms_) out.accumulate(g, -p);
  return out;
}

GeneratorCombo GeneratorCombo::scaled(const RationalPoly& weight) const {
  require_h(weight, "combo weight");
  GeneratorCombo out;
  for (const auto& [g, p] : terms_) out.accumulate(g, p * weight);
  return out;
}

GeneratorCombo GeneratorCombo::scaled(const Rational& factor) const {
  GeneratorCombo out;
  for (const auto& [g, p] : terms_) out.accumulate(g, p.scaled(factor));
  return out;
}

GeneratorCombo GeneratorCombo::without(GeneratorIndex g) const {
  GeneratorCombo out(*this);
  out.terms_.erase(g);
  return out;
}

GeneratorCombo GeneratorCombo::substitute(GeneratorIndex g, const GeneratorCombo& replacement) const {
  const auto it = terms_.find(g);
  if (it == terms_.end()) return *this;
  return without(g) + replacement.scaled(it->second);
}

GeneratorCombo combo_linear(std::span<const GeneratorCombo> combos, std::span<const RationalPoly> weights) {
  if (combos.size() != weights.size()) {
    throw StructuralError(Module::exactpoly, "combo_linear: " + std::to_string(combos.size()) + " combos but " +
                                                 std::to_string(weights.size()) + " weights");
  }
  GeneratorCombo out;
  for (std::size_t k = 0; k < combos.size(); ++k) out = out + combos[k].scaled(weights[k]);
  return out;
}

}  // namespace isochrone::exact
