#pragma once

#include <iosfwd>

namespace kuelsh {

// entry point behind the command-line binary; exits 0 on success, 1 on
// errors, 2 when an analyze run disagrees with the expectation oracle
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kuelsh
