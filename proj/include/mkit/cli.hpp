#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mkit {

// Full command-line front end. args excludes the program name. Returns the
// process exit code: 0 pass, 1 property counterexample, 2 parse error,
// 3 schema or precondition error, 4 capacity error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mkit
