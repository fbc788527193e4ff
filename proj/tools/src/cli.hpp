#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jeq::cli {

/// Exit codes: 0 success, 1 the input fails the requested check, 2 usage or input error.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jeq::cli
