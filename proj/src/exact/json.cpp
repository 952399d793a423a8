#include "isochrone/exact/json.hpp"

#include "isochrone/error.hpp"

namespace isochrone::exact {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw StructuralError(Module::exactpoly, "malformed JSON: " + what);
}

}  // namespace

Json to_json(const RationalPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(c.str());
  return Json{{"var", var_name(p.var())}, {"coeffs", std::move(coeffs)}};
}

RationalPoly rational_poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("var") || !j.contains("coeffs")) malformed("polynomial needs var and coeffs");
  const auto& var = j.at("var");
  if (!var.is_string() || (var != "h" && var != "u")) malformed("var must be \"h\" or \"u\"");
  if (!j.at("coeffs").is_array()) malformed("coeffs must be an array");
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (!c.is_string()) malformed("coefficients must be \"p/q\" strings, never numbers");
    coeffs.push_back(Rational::parse(c.get<std::string>()));
  }
  return RationalPoly(var == "h" ? Var::h : Var::u, std::move(coeffs));
}

Json to_json(const GeneratorCombo& c) {
  Json terms = Json::array();
  for (const auto& [g, p] : c.terms()) terms.push_back(Json{{"i", g.i}, {"j", g.j}, {"poly", to_json(p)}});
  return Json{{"terms", std::move(terms)}};
}

GeneratorCombo combo_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) malformed("combo needs a terms array");
  GeneratorCombo out;
  for (const auto& t : j.at("terms")) {
    if (!t.contains("i") || !t.contains("j") || !t.contains("poly") || !t.at("i").is_number_integer() ||
        !t.at("j").is_number_integer()) {
      malformed("term needs integer i, j and a poly");
    }
    const GeneratorIndex g{t.at("i").get<int>(), t.at("j").get<int>()};
    out = out + GeneratorCombo{{g, rational_poly_from_json(t.at("poly"))}};
  }
  return out;
}

}  // namespace isochrone::exact
