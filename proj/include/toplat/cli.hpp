#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toplat {

/// Runs one command line (args exclude the program name). Returns the exit code:
/// 0 all checks pass, 1 a verification failed, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toplat
