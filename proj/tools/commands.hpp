#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsinfer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitGaveUp = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsinfer::cli
