#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nicf {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2, kExitPrecision = 3 };

/// Runs `nicf <subcommand> ...`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace nicf
