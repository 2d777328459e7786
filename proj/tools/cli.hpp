// Command-line front end: state construction, measures, monogamy/polygamy
// reports, squashed diagnostics, random sweeps and roof runs.
//
// Exit codes: 0 success, 1 domain error (invalid state file, dimension
// mismatch, unwritable output), 2 usage error (unknown verb or flag, missing
// required option). Identical argv produce identical output bytes.
#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace entkit::cli {

int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace entkit::cli
