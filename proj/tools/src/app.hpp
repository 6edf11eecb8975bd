#pragma once

#include <ostream>

namespace rconvex::cli {

/// Parses the command line, runs one subcommand and maps failures to exit
/// codes: 0 success, 2 config error, 3 precondition failure, 4 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rconvex::cli
