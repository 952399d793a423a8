#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isochrone {

enum class Module { exactpoly, reduction, elliptic, quadrature, analysis, dynamics, cli };

std::string_view module_name(Module module) noexcept;

// Base of every error thrown by the library. The message is prefixed with the
// module whose contract was violated, e.g. "elliptic: modulus k=1 ...".
class Error : public std::runtime_error {
 public:
  Error(Module module, const std::string& message);

  Module module() const noexcept { return module_; }

 private:
  Module module_;
};

/// An input lies outside an operation's domain (h <= 0, k >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Arguments disagree in shape: mismatched variable tags, list lengths.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Signals a bug, never bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace isochrone
