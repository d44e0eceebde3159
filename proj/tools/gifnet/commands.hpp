#pragma once

#include <iosfwd>

namespace gifnet::cli {

enum exit_code : int {
    ok = 0,
    bound_violated = 1,
    usage_error = 2,
    non_convergence = 3,
};

// Full command line, argv[0] included. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& err);

} // namespace gifnet::cli
