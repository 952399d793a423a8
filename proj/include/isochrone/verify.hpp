#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace isochrone::verify {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<CheckResult()> run;
};

/// The acceptance criteria, numbered 1-9, plus "5c" and "9c": the zero and
/// limit-cycle checks repeated on coefficient sets designed against the
/// integral as evaluated here. Tolerances are fixed inside each check.
const std::vector<Criterion>& criteria();

/// DomainError for an unknown id.
CheckResult run(std::string_view id);

/// "[PASS] 3  Closed forms vs quadrature oracle (0.41 s): max rel 2e-15"
std::string format_line(const CheckResult& r);

}  // namespace isochrone::verify
