#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equipart::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerics = 2;

/// Runs one command; args excludes the program name. Output goes to `out` unless --output is given.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equipart::cli
