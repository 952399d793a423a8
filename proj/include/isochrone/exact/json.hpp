#pragma once

#include <json.hpp>

#include "isochrone/exact/combo.hpp"
#include "isochrone/exact/polynomial.hpp"

namespace isochrone {

/// Insertion-ordered JSON so emitted documents have a fixed field order.
using Json = nlohmann::ordered_json;

namespace exact {

/// {"var":"h","coeffs":["3/16","1/2"]}; coefficients are exact "p/q" strings.
Json to_json(const RationalPoly& p);
RationalPoly rational_poly_from_json(const Json& j);

/// {"terms":[{"i":2,"j":1,"poly":{...}}, ...]} in generator order.
Json to_json(const GeneratorCombo& c);
GeneratorCombo combo_from_json(const Json& j);

}  // namespace exact
}  // namespace isochrone
