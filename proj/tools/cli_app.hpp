#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phiorbit::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFindings = 1,           // unused by commands; reserved for wrappers
  kInputError = 2,         // malformed flags/config, argument out of range, resource cap
  kGuardNonVerdict = 3,    // at least one orbit stopped on a guard
  kInternalError = 4,      // a verified inequality failed, or an unexpected exception
  kCheckpointMismatch = 5, // checkpoint written by a different configuration
};

// Parses `args` (args[0] is the program name) and runs one command.
// Records go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phiorbit::cli
