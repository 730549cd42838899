#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ampcoh::cli {

/// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;        // I/O or bound violations in a sweep
inline constexpr int kExitInvalidInput = 2;   // bad flags or violated input invariant
inline constexpr int kExitClosedForm = 3;     // closed form requested but unavailable

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "AMPCOH_OUTPUT_DIR";

/// Runs the command line `args` (args[0] is the program name). Tables go to
/// the output file, or to `out` when no file is configured; diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ampcoh::cli
