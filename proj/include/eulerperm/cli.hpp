#pragma once

namespace eulerperm {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitBreakdown = 3 };

/// Subcommands init | run | verify | inspect.
int cli_main(int argc, char** argv);

}  // namespace eulerperm
