#pragma once

#include <ostream>

namespace girg::cli {

/// Process exit codes of girggen.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,         // unknown flag, missing value, malformed number
    kConflict = 3,      // --deg together with --const/--C, or neither
    kInvalidValue = 4,  // value outside the model's range
    kIoFailure = 5,     // output file could not be written
    kInternal = 6,
};

/// Parses and runs one girggen invocation; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace girg::cli
