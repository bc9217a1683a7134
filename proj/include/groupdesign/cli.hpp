#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace groupdesign::cli {

// Exit codes: 0 success, 1 usage error, 2 domain/feasibility error
// (including a failed verification), 3 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;

// Fully resolved invocation of one subcommand. Parsing and serializing
// round-trip: parse(canonical_args()) reproduces the same config and the
// same canonical flag string.
struct RunConfig {
  std::string command;  // build | verify | criteria | round

  std::string manifold;
  std::vector<int> trunc;
  std::string construct;
  std::vector<int> counts;
  int n = 0;
  int n1 = 0;
  int n2 = 0;
  int t = 0;
  int circle_points = 3;
  int dim = 4;
  std::int64_t count = 0;
  std::string input;
  std::string factor_a;
  std::string factor_b;
  std::string output;
  std::string format;  // text | json | csv
  std::string beta_convention = "cosEndpoints";
  std::string theta_convention;
  double dedup_tol = 1e-8;
  std::vector<int> max_level;
  std::vector<std::size_t> select;
  std::string p_sweep;
  std::string es_sweep;
  std::string ref = "haar";
  std::uint64_t seed = 0;

  std::vector<std::string> canonical_args() const;
  bool operator==(const RunConfig&) const = default;
};

// Parses subcommand arguments (without the program name). Throws
// CLI::ParseError-derived exceptions for usage problems.
RunConfig parse_args(const std::vector<std::string>& args);

// Expands "a..b step h" / comma lists / "-inf" into numeric values.
std::vector<double> parse_sweep(const std::string& text);

// Runs one invocation; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace groupdesign::cli
