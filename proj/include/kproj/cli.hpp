#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kproj::cli {

// Runs one command line (without the program name).  Writes the artifact to
// `out` (or --out when given) and diagnostics to `err`.  Exit codes: 0 on
// success, 1 on numerical-contract failures, 2 on validation errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kproj::cli
