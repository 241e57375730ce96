#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace plastsym::cli {

constexpr int kSchemaVersion = 1;

// Exit codes
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInputError = 3;

struct RunConfig {
  double rho = 1.0;
  double tol = 1e-9;
  int trials = 32;
  std::uint64_t seed = 0x5eed2024ULL;
  std::string out;  // report path; empty for stdout
  bool timing = false;
};

// args excludes the program name. Reports go to `out` (or to --out),
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plastsym::cli
