#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gl2tf {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs the command-line front end. Returns the process exit code:
// 0 success, 2 undetermined, 1 error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gl2tf
