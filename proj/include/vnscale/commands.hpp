#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vnscale::cli {

/// Runs the command-line interface on argv-style arguments (args[0] is the
/// program name). Output and diagnostics go to the given streams. Returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vnscale::cli
