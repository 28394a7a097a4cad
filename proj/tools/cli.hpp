#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsescope::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (without the program name). Exit codes: 0 all certificates pass, 1 some
/// certificate fails (the report is still written), 2 input or parameter error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsescope::cli
