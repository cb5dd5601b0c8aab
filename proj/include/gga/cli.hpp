#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gga::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kEvaluation = 3,
  kIo = 4,
};

/// Entry point behind the `gga` executable. `args` excludes the program name.
/// Subcommands: run, sweep, compare, meta. `--dump-defaults` prints the
/// default configuration document.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace gga::cli
