#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scpqca::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_no_cover = 2;

/// Runs one subcommand. `args` excludes the program name.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace scpqca::cli
