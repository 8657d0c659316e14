#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace painleve::cli {

enum ExitCode { ok = 0, usage = 1, numerical = 2, verification = 3 };

/// Runs one command line (without the program name). Reports go to --output
/// or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for sweeps: PAINLEVE_KIT_THREADS if set (>= 1), otherwise the
/// hardware concurrency. ParameterError on a malformed value.
unsigned thread_count();

}  // namespace painleve::cli
