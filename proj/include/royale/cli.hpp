#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace royale::cli {

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `royale` tool. `args` includes the program name.
// The JSON run summary goes to `out`; diagnostics and usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace royale::cli
