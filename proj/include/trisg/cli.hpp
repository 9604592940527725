#pragma once

// Command-line front end. Every subcommand builds one result object that is
// printed as sorted-key JSON (--json), as CSV for the batch commands (--csv)
// or as aligned text.

#include <iosfwd>
#include <string>
#include <vector>

namespace trisg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_resource = 2;
inline constexpr int exit_usage = 64;

/// Runs one command; args exclude the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trisg::cli
