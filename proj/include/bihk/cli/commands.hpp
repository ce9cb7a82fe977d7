#pragma once

#include <iosfwd>

namespace bihk::cli {

// Exit codes: 0 all checks passed, 1 some check failed, 2 usage or input error, 3 numerical or I/O failure.
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bihk::cli
