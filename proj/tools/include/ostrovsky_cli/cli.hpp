#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ostrovsky::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kObstruction = 10,
  kDriftExceeded = 11,
  kBlowUp = 12,
};

struct Environment {
  /// ISO 8601 UTC timestamp for the manifest; the wall clock when empty.
  std::function<std::string()> clock;
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

std::string version();

}  // namespace ostrovsky::cli
