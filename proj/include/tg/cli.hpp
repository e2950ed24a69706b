// Command-line front end.
#pragma once

#include <iosfwd>

namespace tg {

// Exit codes.
enum ExitCode { EXIT_OK = 0, EXIT_VERIFY_FAILED = 1, EXIT_INPUT = 2, EXIT_BUDGET = 3 };

// Runs one subcommand. Results go to `out` (or the --out file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tg
