#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ekss::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,      // bad flags, unknown keys, invalid configuration
  kNumerical = 3,  // a check missed its tolerance or a numerical failure
  kBlowup = 4,     // blow-up in a run that must stay regular
};

// Runs one subcommand. Summary lines go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ekss::cli
