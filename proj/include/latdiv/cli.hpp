#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace latdiv {

/// Runs the command-line interface. `args` excludes the program name.
/// Returns 0 on success, 1 on a validation or input failure, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latdiv
