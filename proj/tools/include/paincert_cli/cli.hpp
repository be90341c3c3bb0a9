#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paincert_cli/run_config.hpp"

namespace paincert::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Parses argv into a RunConfig. Returns an exit code instead when parsing
/// ends the program (help output or a usage error).
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};
ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs one command: writes artifacts, prints the summary to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paincert::cli
