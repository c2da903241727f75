#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wittkit {

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on success, 1 on a domain error or a failed verify run, 2 on usage and
/// parse errors. Nothing escapes as an exception.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace wittkit
