#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghx::cli {

// Runs one command (args exclude the program name) and writes the report
// to out. Returns the process exit code: 0 success, 2 bad input, 3 search
// budget exhausted, 4 violated operation precondition.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace ghx::cli
