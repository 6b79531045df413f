#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgblock::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFails = 1,
  kInvalidInput = 2,
  kBudgetExceeded = 3,
};

/// Environment variable holding the default search budget in seconds.
inline constexpr const char* kBudgetEnv = "PGBLOCK_BUDGET_SECONDS";

/// Runs one command. `args` excludes the program name. JSON goes to `out`,
/// diagnostics to `err`; a blocking-set document is read from `in` when a
/// subcommand needs one and no --input path is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace pgblock::cli
