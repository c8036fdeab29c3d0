#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bistab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConsistency = 3;

/// Entry point of the `bistab` tool; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Convenience overload for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
  bool logarithmic = true;
};

/// `lo:hi:n`, optionally followed by `:log` (default) or `:lin`.
GridSpec parse_grid(const std::string& text);

}  // namespace bistab::cli
