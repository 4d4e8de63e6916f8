#pragma once

// Command-line front end. Exit statuses:
//   0 success, 1 computational limit, 2 usage or input error,
//   3 verify/search found violations or hits, 4 an emitted certificate failed its check.

#include <iosfwd>
#include <string>
#include <vector>

namespace tinv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitLimit = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFindings = 3;
inline constexpr int kExitInternal = 4;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tinv::cli
