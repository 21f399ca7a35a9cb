#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tilejep::cli {

/// Runs one invocation (arguments without the program name). Returns the
/// exit code: 0 success, 1 domain-negative result, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tilejep::cli
