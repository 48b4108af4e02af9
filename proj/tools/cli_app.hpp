#pragma once

#include <string>
#include <vector>

namespace grasscov::cli {

// Runs one command. args excludes the program name. Returns the process exit
// code: 0 success, 1 domain or usage error, 2 budget exhaustion.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace grasscov::cli
