#pragma once

#include <string>
#include <vector>

namespace fibersim::cli {

/// Runs the command line tool. Exit codes: 0 success, 2 usage/config error,
/// 3 runtime/numerical error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace fibersim::cli
