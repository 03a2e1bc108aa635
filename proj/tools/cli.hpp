#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace delaystab::cli {

enum ExitCode : int { ok = 0, usage_error = 1, numeric_error = 2 };

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "v0,v1,..." into numbers; throws delaystab::InvalidArgument on malformed or non-finite entries.
std::vector<double> parse_number_list(const std::string& text);

} // namespace delaystab::cli
