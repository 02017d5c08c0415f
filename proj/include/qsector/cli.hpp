// Command-line front end. Exit codes: 0 success, 1 at least one requested
// relation failed, 2 input or usage error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsector::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace qsector::cli
