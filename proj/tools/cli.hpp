#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfkc::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoFailure = 2,
  kUsage = 64,
  kDataError = 65,
};

/// Runs the command line. args excludes the program name. Results go to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mfkc::cli
