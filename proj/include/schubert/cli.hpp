#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schubert::cli {

enum ExitCode : int {
    ok = 0,
    usage_or_io = 1,
    not_in_fiber = 2,
    boundary_ambiguous = 3,
    convergence_failure = 4,
    verification_failure = 5,
};

// Runs one command line (args[0] is the program name). Output goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace schubert::cli
