#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace celgot::cli {

/// Exit codes: 0 success, 1 failure or violation, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace celgot::cli
