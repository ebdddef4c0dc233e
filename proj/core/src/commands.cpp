#include "hdct/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>

#include "hdct/clr.hpp"
#include "hdct/report.hpp"

namespace hdct {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(what + ": not an integer: '" + s + "'");
  }
  return value;
}

void print_outcome_table(std::ostream& out,
                         const std::vector<TestOutcome>& outcomes) {
  out << "family  statistic n=" << outcomes.front().n_effective
      << " p=" << outcomes.front().p << "\n";
  for (const TestOutcome& o : outcomes) {
    out << "  " << family_name(o.family) << "  statistic="
        << format_double(o.statistic) << "  p-value=" << format_double(o.pvalue)
        << "  threshold=" << format_double(o.threshold) << "  "
        << (o.reject ? "reject" : "fail-to-reject") << " at alpha="
        << format_double(o.alpha) << "\n";
  }
}

void write_or_print_report(const std::string& csv, const std::string& out_path,
                           std::ostream& out) {
  if (out_path.empty()) {
    out << csv;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw InputError("cannot write '" + out_path + "'");
  }
  file << csv;
}

std::vector<std::pair<std::string, std::string>> ingest_provenance(
    const TestCommandOptions& options, const IngestFlags& flags) {
  std::vector<std::pair<std::string, std::string>> prov;
  prov.emplace_back("input", options.input1);
  if (!options.input2.empty()) prov.emplace_back("input2", options.input2);
  if (options.group_column) prov.emplace_back("group_column", *options.group_column);
  prov.emplace_back("alpha", format_double(options.alpha));
  if (flags.closed) prov.emplace_back("closed", "1");
  if (flags.pseudocount_applied) {
    // Zero replacement breaks strict compositionality; always disclosed.
    prov.emplace_back("pseudocount", format_double(flags.pseudocount));
    prov.emplace_back("zeros_replaced", std::to_string(flags.zeros_replaced));
  }
  if (options.unbiased_cov) prov.emplace_back("unbiased_cov", "1");
  return prov;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) != nullptr) {
    return kExitConfigError;
  }
  if (dynamic_cast<const NumericalError*>(&error) != nullptr) {
    return kExitNumericalError;
  }
  return kExitInputError;
}

std::vector<int> parse_m_grid(const std::string& spec) {
  if (spec.empty()) {
    throw ConfigError("empty m grid");
  }
  std::vector<int> grid;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos = 0; (pos = spec.find(':', start)) != std::string::npos;
         start = pos + 1) {
      parts.push_back(spec.substr(start, pos - start));
    }
    parts.push_back(spec.substr(start));
    if (parts.size() != 2 && parts.size() != 3) {
      throw ConfigError("m grid range must be first:last[:step]");
    }
    const int first = parse_int(parts[0], "m grid");
    const int last = parse_int(parts[1], "m grid");
    const int step = parts.size() == 3 ? parse_int(parts[2], "m grid") : 1;
    if (step < 1 || last < first) {
      throw ConfigError("m grid range must be increasing with step >= 1");
    }
    for (int m = first; m <= last; m += step) {
      grid.push_back(m);
    }
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const std::size_t pos = std::min(spec.find(',', start), spec.size());
      grid.push_back(parse_int(spec.substr(start, pos - start), "m grid"));
      start = pos + 1;
    }
  }
  return grid;
}

int resolve_threads(const std::optional<std::string>& flag) {
  std::string value;
  if (flag) {
    value = *flag;
  } else if (const char* env = std::getenv("HDCT_THREADS")) {
    value = env;
  }
  if (value.empty() || value == "auto") {
    return 0;
  }
  const int threads = parse_int(value, "threads");
  if (threads < 1) {
    throw ConfigError("threads must be >= 1 or 'auto'");
  }
  return threads;
}

int cmd_test_one(const TestCommandOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&]() -> int {
    IngestOptions ingest;
    ingest.has_header = options.has_header;
    ingest.auto_close = options.auto_close;
    ingest.pseudocount = options.pseudocount;
    const IngestedSample sample = ingest_csv(options.input1, ingest);
    const ClrMatrix y = clr_transform(sample.composition);

    Eigen::VectorXd mu0_clr = Eigen::VectorXd::Zero(y.p());
    if (!options.mu0_path.empty()) {
      const Eigen::VectorXd mu0 = read_vector_csv(options.mu0_path);
      if (mu0.size() != y.p()) {
        throw DimensionMismatch("mu0 length does not match data");
      }
      mu0_clr = mu0.array() - mu0.mean();
    }

    const TestTriple t =
        run_all_one(y, mu0_clr, options.alpha, {options.unbiased_cov});
    const std::vector<TestOutcome> outcomes = {t.sum, t.max, t.combo};

    out << "one-sample mean test, " << options.input1 << "\n";
    if (sample.flags.pseudocount_applied) {
      out << "note: " << sample.flags.zeros_replaced
          << " zero(s) replaced by pseudocount "
          << format_double(sample.flags.pseudocount)
          << " and rows re-closed\n";
    }
    print_outcome_table(out, outcomes);

    const std::string csv =
        outcomes_to_csv(outcomes, ingest_provenance(options, sample.flags));
    if (!options.out_path.empty()) {
      write_or_print_report(csv, options.out_path, out);
    }
    return kExitOk;
  });
}

int cmd_test_two(const TestCommandOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&]() -> int {
    IngestOptions ingest;
    ingest.has_header = options.has_header;
    ingest.auto_close = options.auto_close;
    ingest.pseudocount = options.pseudocount;

    std::optional<IngestedPair> pair;
    if (!options.input2.empty()) {
      const IngestedSample s1 = ingest_csv(options.input1, ingest);
      const IngestedSample s2 = ingest_csv(options.input2, ingest);
      IngestFlags flags = s1.flags;
      flags.zeros_replaced += s2.flags.zeros_replaced;
      flags.pseudocount_applied |= s2.flags.pseudocount_applied;
      pair.emplace(IngestedPair{s1.composition, s2.composition, options.input1,
                                options.input2, flags});
    } else {
      ingest.group_column = options.group_column;
      pair.emplace(ingest_csv_grouped(options.input1, ingest));
    }

    const ClrMatrix y1 = clr_transform(pair->group1);
    const ClrMatrix y2 = clr_transform(pair->group2);
    const TestTriple t =
        run_all_two(y1, y2, options.alpha, {options.unbiased_cov});
    const std::vector<TestOutcome> outcomes = {t.sum, t.max, t.combo};

    out << "two-sample mean test, group1=" << pair->label1
        << " (n=" << y1.n() << "), group2=" << pair->label2
        << " (n=" << y2.n() << ")\n";
    if (pair->flags.pseudocount_applied) {
      out << "note: " << pair->flags.zeros_replaced
          << " zero(s) replaced by pseudocount "
          << format_double(pair->flags.pseudocount) << " and rows re-closed\n";
    }
    print_outcome_table(out, outcomes);

    const std::string csv =
        outcomes_to_csv(outcomes, ingest_provenance(options, pair->flags));
    if (!options.out_path.empty()) {
      write_or_print_report(csv, options.out_path, out);
    }
    return kExitOk;
  });
}

int cmd_simulate(const SimulateCommandOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (!options.seed) {
      throw ConfigError("--seed is required: simulations must be reproducible");
    }

    ExperimentConfig config;
    config.dist.kind = parse_dist(options.dist);
    config.cov.kind = parse_cov(options.cov);
    config.p = options.p;
    config.cov.p = options.p;
    config.alpha = options.alpha;
    config.reps = options.reps;
    config.energy = options.energy;
    config.master_seed = *options.seed;
    config.threads = resolve_threads(options.threads);
    config.unbiased_cov = options.unbiased_cov;
    config.redraw_cov_per_rep = options.redraw_cov_per_rep;

    const bool two_sample = options.n1 > 0 || options.n2 > 0;
    if (two_sample && options.n > 0) {
      throw ConfigError("give either --n or --n1/--n2, not both");
    }
    config.n = options.n;
    config.n1 = options.n1;
    config.n2 = options.n2;

    ExperimentReport report;
    if (options.mode == "size") {
      config.mode = two_sample ? ExperimentMode::SizeTwo : ExperimentMode::SizeOne;
      report = run_size_experiment(config);
    } else if (options.mode == "power") {
      config.mode = two_sample ? ExperimentMode::PowerTwo : ExperimentMode::PowerOne;
      config.m_grid = parse_m_grid(options.m_spec);
      report = run_power_experiment(config);
    } else if (options.mode == "null-check") {
      if (two_sample) {
        throw ConfigError("null-check runs the one-sample statistics; use --n");
      }
      config.mode = ExperimentMode::NullDiagnostics;
      report = run_null_diagnostics(config);
    } else {
      throw ConfigError("unknown simulate mode '" + options.mode +
                        "' (expected size|power|null-check)");
    }

    const std::string csv = report_to_csv(report);
    write_or_print_report(csv, options.out_path, out);

    err << mode_name(config.mode) << " finished: reps=" << config.reps
        << " p=" << config.p << " wall=" << std::fixed << std::setprecision(2)
        << report.wall_seconds << "s\n";
    err.unsetf(std::ios_base::floatfield);
    if (!options.out_path.empty()) {
      err << "report written to " << options.out_path << "\n";
    }
    return kExitOk;
  });
}

}  // namespace hdct
