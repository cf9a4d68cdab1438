#pragma once

// Command-line front end. Exit codes: 0 holds / success, 1 well-formed but
// the requested property fails, 2 input or usage error, 3 internal
// inconsistency between a condition system and its direct oracle.

#include <iosfwd>
#include <string>
#include <vector>

namespace affleib::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affleib::cli
