// cli.hpp — command-line front end, exposed as a function so tests can drive
// it in-process. Exit codes: 0 success, 1 usage error, 2 numerical failure.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dmspin::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dmspin::cli
