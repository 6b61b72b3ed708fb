#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace icsi::cli {

/// Environment variable naming the default instance directory.
inline constexpr const char *kInstanceDirEnv = "ICSI_INSTANCES";

/// Parses and runs one subcommand. `args` excludes the program name.
/// Results go to `out`, progress and diagnostics to `err`.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace icsi::cli
