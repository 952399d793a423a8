#include "isochrone/error.hpp"

namespace isochrone {

std::string_view module_name(Module module) noexcept {
  switch (module) {
    case Module::exactpoly: return "exactpoly";
    case Module::reduction: return "reduction";
    case Module::elliptic: return "elliptic";
    case Module::quadrature: return "quadrature";
    case Module::analysis: return "analysis";
    case Module::dynamics: return "dynamics";
    case Module::cli: return "cli";
  }
  return "unknown";
}

Error::Error(Module module, const std::string& message)
    : std::runtime_error(std::string(module_name(module)) + ": " + message), module_(module) {}

}  // namespace isochrone
