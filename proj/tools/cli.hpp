#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nlca::cli {

// Exit codes: 0 pass, 1 fail or infeasible, 2 usage, parse error or
// unsupported mode, 3 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlca::cli
