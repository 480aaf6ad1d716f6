#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace zetalab {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitDomain = 2, kExitAccuracy = 3, kExitRegime = 4 };

/// Runs one command. args excludes the program name, e.g. {"eval", "--config", "run.json"}.
/// Payloads go to out (or to --out), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The result of one command before formatting.
struct CommandOutput {
    nlohmann::json json;
    std::string csv;
};

/// Executes a command on an already merged config block (no file handling). Throws the library's
/// errors; run_cli maps them to exit codes.
CommandOutput run_command(const std::string& command, const nlohmann::json& config);

}  // namespace zetalab
