#pragma once

#include <iosfwd>

namespace epsqp::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

/// Entry point behind the epsqp binary.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace epsqp::cli
