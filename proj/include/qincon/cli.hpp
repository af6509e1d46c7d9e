#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qincon::cli {

// Dispatch one command line (argv without the program name) and write reports
// to out.  Exit codes: 0 success; 1 usage or input error; 2 verification
// failure (a violation was found, or a reconciliation contradiction, or a
// selftest mismatch); 3 theorem precondition not met.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qincon::cli
