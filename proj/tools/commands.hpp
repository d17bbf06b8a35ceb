#pragma once

#include <iosfwd>

namespace pm::cli {

enum ExitCode : int { Ok = 0, Usage = 2, Resource = 3, Unsupported = 4 };

// argv[0] is the program name. Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pm::cli
