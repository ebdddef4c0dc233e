#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hdct/commands.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

void add_ingest_flags(CLI::App* cmd, hdct::TestCommandOptions& options) {
  cmd->add_flag("--has-header", options.has_header,
                "First row holds column names");
  cmd->add_flag("--auto-close", options.auto_close,
                "Normalize each row to the simplex (for count tables)");
  cmd->add_option("--pseudocount", options.pseudocount,
                  "Replace zeros by this value and re-close (flagged in the "
                  "report; off by default)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--unbiased-cov", options.unbiased_cov,
                "Use n-1 / N-2 covariance divisors instead of n / N");
  cmd->add_option("--alpha", options.alpha, "Significance level")
      ->default_val(0.05);
  cmd->add_option("--out", options.out_path, "Write the CSV report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean tests for high-dimensional compositional data"};
  app.require_subcommand(1);

  // test-one ------------------------------------------------------------
  hdct::TestCommandOptions test_one;
  CLI::App* cmd_one = app.add_subcommand(
      "test-one", "One-sample mean test on a composition CSV");
  cmd_one->add_option("input", test_one.input1, "Composition CSV")->required();
  cmd_one->add_option("--mu0", test_one.mu0_path,
                      "CSV vector with the null mean (log-basis scale); "
                      "defaults to zero");
  add_ingest_flags(cmd_one, test_one);

  // test-two ------------------------------------------------------------
  hdct::TestCommandOptions test_two;
  std::string group_column_flag;
  CLI::App* cmd_two = app.add_subcommand(
      "test-two", "Two-sample mean test (two files, or one with a group column)");
  cmd_two->add_option("input", test_two.input1, "Composition CSV (group 1, or "
                      "both groups with --group-column)")
      ->required();
  cmd_two->add_option("input2", test_two.input2, "Composition CSV (group 2)");
  cmd_two->add_option("--group-column", group_column_flag,
                      "Column (name or 0-based index) with the group labels");
  add_ingest_flags(cmd_two, test_two);

  // simulate ------------------------------------------------------------
  hdct::SimulateCommandOptions sim;
  std::uint64_t seed_flag = 0;
  std::string threads_flag;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate", "Monte-Carlo experiments: size, power, null-check");
  cmd_sim->require_subcommand(1);

  auto add_sim_flags = [&](CLI::App* sub, bool with_m) {
    sub->add_option("--dist", sim.dist, "Innovation law: A1|A2|A3")
        ->default_val("A1");
    sub->add_option("--cov", sim.cov, "Covariance scenario: B1|B2|B3")
        ->default_val("B1");
    sub->add_option("--n", sim.n, "Sample size (one-sample modes)");
    sub->add_option("--n1", sim.n1, "Group 1 size (two-sample modes)");
    sub->add_option("--n2", sim.n2, "Group 2 size (two-sample modes)");
    sub->add_option("--p", sim.p, "Number of components")->required();
    sub->add_option("--reps", sim.reps, "Replications")->required();
    sub->add_option("--alpha", sim.alpha, "Significance level")
        ->default_val(0.05);
    if (with_m) {
      sub->add_option("--m", sim.m_spec,
                      "Sparsity grid: first:last[:step] or comma list")
          ->required();
      sub->add_option("--energy", sim.energy,
                      "Total squared signal norm ||mu||^2")
          ->default_val(0.5);
    }
    sub->add_option("--seed", seed_flag, "Master seed (required: runs must "
                    "be reproducible)")
        ->required();
    sub->add_option("--threads", threads_flag,
                    "Worker count or 'auto' (HDCT_THREADS env var as "
                    "fallback)");
    sub->add_option("--out", sim.out_path, "Write the CSV report here");
    sub->add_flag("--unbiased-cov", sim.unbiased_cov,
                  "Use unbiased covariance divisors");
    sub->add_flag("--redraw-cov-per-rep", sim.redraw_cov_per_rep,
                  "Redraw the B2/B3 covariance parameters every replication");
  };

  add_sim_flags(cmd_sim->add_subcommand("size", "Empirical size under the null"),
                false);
  add_sim_flags(cmd_sim->add_subcommand(
                    "power", "Empirical power across sparsity levels"),
                true);
  add_sim_flags(cmd_sim->add_subcommand(
                    "null-check", "Null-distribution diagnostics"),
                false);

  // version -------------------------------------------------------------
  CLI::App* cmd_version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11's own exit prints the message; remap the code to the contract.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hdct::kExitConfigError;
  }

  if (cmd_version->parsed()) {
    std::cout << "hdct " << kVersion << "\n";
    return hdct::kExitOk;
  }
  if (cmd_one->parsed()) {
    return hdct::cmd_test_one(test_one, std::cout, std::cerr);
  }
  if (cmd_two->parsed()) {
    if (!group_column_flag.empty()) {
      test_two.group_column = group_column_flag;
    }
    if (test_two.input2.empty() && !test_two.group_column) {
      std::cerr << "error: give a second file or --group-column\n";
      return hdct::kExitConfigError;
    }
    return hdct::cmd_test_two(test_two, std::cout, std::cerr);
  }

  // simulate
  for (CLI::App* sub : cmd_sim->get_subcommands()) {
    sim.mode = sub->get_name();
  }
  if (seed_flag != 0 || cmd_sim->get_subcommands()[0]->count("--seed") > 0) {
    sim.seed = seed_flag;
  }
  if (!threads_flag.empty()) {
    sim.threads = threads_flag;
  }
  return hdct::cmd_simulate(sim, std::cout, std::cerr);
}
