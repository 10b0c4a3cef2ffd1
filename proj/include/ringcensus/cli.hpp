#pragma once

// Command-line front end. Exit codes: 0 success, 1 divisibility violation,
// 2 usage or input error, 3 budget refusal.

#include <iosfwd>
#include <string>
#include <vector>

#include "ringcensus/census.hpp"

namespace ringcensus {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs one invocation; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2..8", "2,3,5" or "4". Throws std::invalid_argument.
std::vector<u64> parse_range(const std::string& text);

/// Campaign description read from a key = value file.
///
///   # comment
///   rings   = 2..4          cartesian product of rings, vars and degree,
///   vars    = 1..3          and/or explicit cells as m:n:d
///   degree  = 2
///   cells   = 5:2:2, 6:2:3
///   workers = 1
///   budget  = 10000000000
///   output  = results       directory, created if missing
///   formats = csv, md, json
///   seed    = 1
///   verify_samples = 100    sampled divisibility checks per cell (n >= 2)
///   force   = 8:3:2         cells allowed to exceed the budget
struct CampaignConfig {
  std::vector<Cell> cells;
  unsigned workers = 1;
  u64 budget = 0;
  std::string output_dir = "campaign";
  std::vector<std::string> formats{"csv"};
  u64 seed = 1;
  u64 verify_samples = 0;
  std::vector<Cell> forced;

  /// Throws std::invalid_argument with the offending line.
  static CampaignConfig parse(const std::string& text);
  bool is_forced(const Cell& c) const;
};

}  // namespace ringcensus
