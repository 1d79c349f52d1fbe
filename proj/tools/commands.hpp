#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssx::cli {

// Parses and runs one command line (without the program name). Writes the
// report to `out` (or the file given by --output) and diagnostics to `err`.
// Exit codes: 0 all claims pass, 1 at least one claim failed, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ssx::cli
