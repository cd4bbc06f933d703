#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcfsim::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kProtocolFault = 2 };

/// Entry point of the dcfsim tool. `args` excludes the program name.
/// Never throws; failures are reported on `err` and mapped to an ExitCode.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dcfsim::cli
