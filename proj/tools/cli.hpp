#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sf::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitBadHex = 3,
  kExitIo = 4,
  kExitConstants = 5,
  kExitInput = 6,
};

/// Runs one sfcli invocation. args excludes the program name. Data goes to
/// `out` (or --out), diagnostics only to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace sf::cli
