#pragma once

#include <iosfwd>

namespace ngstrat {

/// Exit codes: 0 success, 1 semantic failure (cycle, rejection, conflict),
/// 2 usage, parse or I/O error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ngstrat
