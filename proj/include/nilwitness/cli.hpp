#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilwitness::cli {

// Runs one command line (without argv[0]); writes reports to out and
// diagnostics to err. Returns the process exit code: 0 when all requested
// checks pass, 1 when a check fails, 2 on usage errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nilwitness::cli
