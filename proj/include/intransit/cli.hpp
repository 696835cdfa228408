#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace intransit::cli {

// Exit codes of `dispatch`.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kFormat = 2;
inline constexpr int kAssertion = 3;

// Runs one command line (args exclude the program name). Reports go to
// `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intransit::cli
