#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace revivalkit::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kInvariantFailure = 3,
};

/// Runs `revivalkit <args...>` (args exclude the program name). Normal output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace revivalkit::cli
