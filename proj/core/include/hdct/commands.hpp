#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hdct/csv.hpp"
#include "hdct/simulation.hpp"

namespace hdct {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalError = 3;
inline constexpr int kExitConfigError = 4;

struct TestCommandOptions {
  std::string input1;
  std::string input2;  // second file for two-sample mode; may be empty
  std::optional<std::string> group_column;
  bool has_header = false;
  bool auto_close = false;
  double pseudocount = 0.0;
  bool unbiased_cov = false;
  double alpha = 0.05;
  std::string mu0_path;  // one-sample only; optional
  std::string out_path;  // write the CSV report here if set
};

struct SimulateCommandOptions {
  std::string mode;  // "size" | "power" | "null-check"
  std::string dist = "A1";
  std::string cov = "B1";
  int n = 0;
  int n1 = 0;
  int n2 = 0;
  int p = 0;
  int reps = 0;
  double alpha = 0.05;
  std::string m_spec;  // "1:20", "1:20:2" or "1,5,10"
  double energy = 0.5;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> threads;  // "auto" or a count
  std::string out_path;
  bool unbiased_cov = false;
  bool redraw_cov_per_rep = false;
};

/// Runs all three one-sample tests on a composition CSV; prints a table and
/// optionally writes the machine-readable report. Exit code 0 whatever the
/// decisions are; nonzero only on errors.
int cmd_test_one(const TestCommandOptions& options, std::ostream& out,
                 std::ostream& err);

/// Two-sample variant: either two files or one file plus a group column.
int cmd_test_two(const TestCommandOptions& options, std::ostream& out,
                 std::ostream& err);

/// Size / power / null-check experiments; writes the report CSV to
/// options.out_path (or `out` when no path is given) and a human summary
/// with timings to `err`.
int cmd_simulate(const SimulateCommandOptions& options, std::ostream& out,
                 std::ostream& err);

/// "a:b", "a:b:step" or comma list -> explicit grid.
std::vector<int> parse_m_grid(const std::string& spec);

/// --threads flag or HDCT_THREADS env var; "auto" (or nothing) -> 0, which
/// the engine resolves to the hardware concurrency.
int resolve_threads(const std::optional<std::string>& flag);

/// Maps a thrown error to the exit-code contract above.
int exit_code_for(const std::exception& error);

}  // namespace hdct
