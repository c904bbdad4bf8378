#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dormant::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitPrecision = 4;

/// Version string written into cache records.
std::string tool_version();

/// Parses `args` (without the program name), runs the command and writes
/// the serialized result to `out`. Diagnostics go to `err`. Returns the exit
/// code. `version_override`, when non-empty, replaces tool_version() for the
/// cache.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::string& version_override = {});

}  // namespace dormant::cli
