#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypercalc::cli {

/// Runs one `hypercalc` invocation. `args` excludes the program name.
/// Returns the process exit status: 0 success, 1 module or input error,
/// 2 usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Splits a REPL line into arguments; single and double quotes group.
std::vector<std::string> split_line(const std::string& line);

}  // namespace hypercalc::cli
