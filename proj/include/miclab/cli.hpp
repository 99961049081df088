#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace miclab {

// Process exit codes of the mic-lab tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvariantFailure = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1/198", "0.5" or "-1". Integer fractions are divided once in double.
double parse_fraction(const std::string& text);

}  // namespace miclab
