#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ovkit::cli {

inline constexpr std::uint64_t kDefaultSeed = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInput = 2,
  kExitResource = 3,
  kExitCertification = 4,
};

/// Runs one command. args excludes the program name. Results go to `out`
/// (JSON, or CSV for calibrate and bench), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ovkit::cli
