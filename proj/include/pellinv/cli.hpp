#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pellinv::cli {

enum ExitCode : int { Ok = 0, Usage = 2, Domain = 3 };

// Runs one command line (program name excluded). Output goes to `out` unless
// --out redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pellinv::cli
