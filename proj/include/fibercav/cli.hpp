#pragma once

#include <string>
#include <vector>

namespace fibercav {

// Parses command-line arguments (without the program name), runs the
// requested subcommand, and writes the result to stdout or the configured
// path.  Returns the process exit code: 0 on success, 2 for configuration
// or usage problems, 3 for solver failures, 4 for integrator failures.
int run_cli(const std::vector<std::string>& args);

}  // namespace fibercav
