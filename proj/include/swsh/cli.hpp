#pragma once

// The `swsh` command line: eval, transform, verify, multiplets.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / parse / domain
// errors, 3 band limit exceeded, 4 unknown verify suite.

#include <iosfwd>

namespace swsh {

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace swsh
