#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treelap {

// Full command-line entry point: parses args (without the program name),
// dispatches the subcommand, writes the JSON report to out and the human
// summary to err. Returns the process exit code: 0 success, 1 domain
// failure, 2 I/O or parse failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treelap
