#pragma once

#include <string>
#include <vector>

namespace levelrank {

/// Command-line front end. `args` excludes the program name.
/// Exit codes: 0 ok, 1 usage, 2 I/O or malformed input, 3 validation failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace levelrank
