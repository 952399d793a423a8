#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isochrone::cli {

/// Exit statuses of the command-line tool.
enum Exit : int {
  ok = 0,
  checks_failed = 1,
  usage = 2,
  domain = 3,
  consistency = 4,
};

/// Runs one invocation. args excludes the program name. Payload goes to out
/// (or to --out PATH), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isochrone::cli
