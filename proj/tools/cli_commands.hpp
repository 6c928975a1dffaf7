#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lci::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs `lci <args...>` in-process; args excludes the program name.
/// Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lci::cli
