#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace signet {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEngineError = 1;
inline constexpr int kExitMalformedSession = 2;
inline constexpr int kExitVerificationFailed = 3;
inline constexpr int kExitIoFailure = 4;
inline constexpr int kExitUsage = 64;

// args excludes the program name. Diagnostics are one line on err:
// "error: <Code>: <message>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace signet
