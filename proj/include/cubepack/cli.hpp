#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cubepack::cli {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kRefused = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on invalid input or a
/// failed verification, 2 when a resource guard refuses the run.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1..4" or "1,2,5".
std::vector<int> parse_dims(const std::string& text);

}  // namespace cubepack::cli
