#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polarsim {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,        // runtime failure
  kExitMissingConfig = 2,  // config file not found
  kExitMissingApiKey = 3,  // live mode without the key variable
  kExitInvalidConfig = 4,  // config does not parse or validate
  kExitUsage = 5,          // bad command line
};

/// Entry point behind the `polarsim` executable. `args` excludes argv[0].
///
///   simulate            run one agent simulation; write snapshot, stats CSV, manifest
///   prepare-conditions  write the six condition snapshots, stats CSV and manifest
///   export-curve        reaction-probability CSV over the o_i grid
///   serve               host the participant feed service
///   default-config      print or write a config file with every default filled in
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarsim
