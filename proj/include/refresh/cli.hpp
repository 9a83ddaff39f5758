#pragma once

#include <iosfwd>

namespace refresh
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoIndifference = 2;

/// Runs the `refresh` command line. Exit codes: 0 success, 1 usage or input
/// error, 2 analysis finished without an indifference point.
int runCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

} // namespace refresh
