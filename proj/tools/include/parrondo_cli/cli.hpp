#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parrondo::cli {

// Runs the command line `args` (program name excluded). Results go to `out`
// unless --out names a file; diagnostics go to `err`. Returns the exit code:
// 0 success, 1 unexpected failure, 2 invalid input, 3 solver did not
// converge / chain reducible / failed rows, 4 cross-check failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parrondo::cli
