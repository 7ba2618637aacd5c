#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entorder::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBadInput = 2,
  kOperationFailed = 3,
};

/// Runs one command line (without the program name). Reports and generated
/// spectra go to `out` unless -o names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entorder::cli
