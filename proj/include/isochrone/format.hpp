#pragma once

#include <string>

namespace isochrone {

/// Shortest-round-trip-safe decimal with 17 significant digits, locale free.
std::string format_real(double x);

}  // namespace isochrone
