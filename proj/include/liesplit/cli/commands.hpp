#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liesplit::cli {

// Parses argv (without the program name), runs the requested command, and
// writes the report to `out` and diagnostics to `err`. Exit codes: 0 on
// success, 1 on input or configuration errors, 2 on numerical
// non-convergence or a failed verification.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace liesplit::cli
