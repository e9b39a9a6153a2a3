#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netcfg::cli {

/// Exit codes of the netcfg tool.
enum ExitCode : int {
  kOk = 0,         // success, satisfied, not refuted
  kUsage = 1,      // bad command line
  kInput = 2,      // unreadable or invalid input
  kSignal = 3,     // violation found, incompatible, entangled
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netcfg::cli
