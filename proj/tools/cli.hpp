#pragma once

#include <iosfwd>

namespace hm::cli {

/// Exit codes: 0 success, 1 internal failure, 2 input error, 3 degenerate data.
enum ExitCode : int { ok = 0, failure = 1, input_error = 2, degenerate = 3 };

/// Runs the command line. Results go to `--out` when given, otherwise to
/// `out`; diagnostics and discard summaries go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hm::cli
