#pragma once

#include <string>
#include <vector>

namespace fracflow::cli {

/// Entry point shared by the binary and the tests. Exit codes: 0 success,
/// 2 config error, 3 solver error, 4 property violation.
int run_cli(const std::vector<std::string>& args);

}  // namespace fracflow::cli
