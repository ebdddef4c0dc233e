#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdct/datagen.hpp"
#include "hdct/mean_tests.hpp"

namespace hdct {

enum class ExperimentMode { SizeOne, SizeTwo, PowerOne, PowerTwo, NullDiagnostics };

const char* mode_name(ExperimentMode mode);

/// Declarative experiment description. A report is a pure function of this
/// struct: the per-replication random streams are derived from master_seed
/// and the replication index, so thread count and scheduling never change
/// the result.
///
/// cov.build_seed == 0 means "derive from master_seed"; the covariance (and
/// its square root) is built once per experiment and shared across
/// replications unless redraw_cov_per_rep is set.
struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::SizeOne;
  DistributionSpec dist;
  CovarianceSpec cov;
  int n = 0;        // one-sample modes
  int n1 = 0;       // two-sample modes
  int n2 = 0;
  int p = 0;
  double alpha = 0.05;
  int reps = 0;
  std::vector<int> m_grid;  // power modes
  double energy = 0.5;
  std::uint64_t master_seed = 0;
  int threads = 0;  // <= 0: hardware concurrency
  bool unbiased_cov = false;
  bool redraw_cov_per_rep = false;

  bool two_sample() const {
    return mode == ExperimentMode::SizeTwo || mode == ExperimentMode::PowerTwo;
  }
};

/// Null-law diagnostics pooled over all replications.
struct Diagnostics {
  double ks_sum_normal = 0;       // KS distance, sum statistic vs N(0,1)
  double gumbel_exceedance = 0;   // share of centered max stats >= q_alpha
  double combo_gof_pvalue = 0;    // chi-square GOF vs density 2(1-w), 10 bins
  double combo_rejection_rate = 0;
  double sum_max_corr = 0;        // Pearson corr(sum, centered max)
};

struct ExperimentReport {
  ExperimentConfig config;
  // Index order everywhere: sum, max, com.
  std::array<double, 3> rejection_rate{};
  std::array<double, 3> rejection_se{};
  std::vector<std::array<double, 3>> power;     // one row per m_grid entry
  std::vector<std::array<double, 3>> power_se;
  std::optional<Diagnostics> diagnostics;
  double wall_seconds = 0;
};

/// A replication failure, annotated with the replication index and the
/// random stream ids so the offending draw can be replayed in isolation.
class SimulationError : public NumericalError {
 public:
  SimulationError(int replication, std::uint64_t master_seed,
                  const std::string& what)
      : NumericalError("replication " + std::to_string(replication) +
                       " (seed " + std::to_string(master_seed) + ", streams (" +
                       std::to_string(replication) + ",0)/(" +
                       std::to_string(replication) + ",1)): " + what),
        replication(replication) {}
  int replication;
};

void validate_config(const ExperimentConfig& config);

/// Empirical size under the null (mu^W = 0): rejection rate of each
/// statistic with its binomial standard error.
ExperimentReport run_size_experiment(const ExperimentConfig& config);

/// Empirical power across the m_grid sparsity levels. One-sample mode
/// shifts mu^W by the signal vector; two-sample mode shifts group 1 only.
/// Innovations are shared across m within a replication (common random
/// numbers), which smooths the power curves without biasing them.
ExperimentReport run_power_experiment(const ExperimentConfig& config);

/// Null-distribution diagnostics of the one-sample statistics: normal fit
/// of the sum statistic, Gumbel exceedance of the centered max, combination
/// statistic GOF against density 2(1-w), and the sum/max correlation.
ExperimentReport run_null_diagnostics(const ExperimentConfig& config);

}  // namespace hdct
