#include "hdct/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "hdct/clr.hpp"
#include "hdct/distributions.hpp"

namespace hdct {

const char* mode_name(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::SizeOne: return "size-one";
    case ExperimentMode::SizeTwo: return "size-two";
    case ExperimentMode::PowerOne: return "power-one";
    case ExperimentMode::PowerTwo: return "power-two";
    case ExperimentMode::NullDiagnostics: return "null-check";
  }
  return "?";
}

void validate_config(const ExperimentConfig& config) {
  if (config.p < 2) {
    throw ConfigError("p must be >= 2");
  }
  if (config.reps < 1) {
    throw ConfigError("reps must be >= 1");
  }
  if (!(config.alpha > 0.0) || !(config.alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0,1)");
  }
  if (config.two_sample()) {
    if (config.n1 < 2 || config.n2 < 2) {
      throw ConfigError("two-sample modes need n1, n2 >= 2");
    }
    if (config.n1 + config.n2 < 5) {
      throw ConfigError("two-sample modes need n1 + n2 >= 5");
    }
  } else {
    if (config.n < 5) {
      throw ConfigError("one-sample modes need n >= 5");
    }
  }
  const bool power_mode = config.mode == ExperimentMode::PowerOne ||
                          config.mode == ExperimentMode::PowerTwo;
  if (power_mode) {
    if (config.m_grid.empty()) {
      throw ConfigError("power modes need a non-empty m grid");
    }
    for (int m : config.m_grid) {
      if (m < 1 || m > config.p) {
        throw ConfigError("m grid entries must satisfy 1 <= m <= p");
      }
    }
    if (config.energy < 0.0) {
      throw ConfigError("energy must be non-negative");
    }
  }
  if (config.cov.kind == CovKind::Explicit &&
      config.cov.explicit_matrix.rows() != config.p) {
    throw ConfigError("explicit covariance does not match p");
  }
  if (config.cov.p != 0 && config.cov.p != config.p) {
    throw ConfigError("covariance spec p does not match experiment p");
  }
}

namespace {

CovarianceSpec resolved_cov(const ExperimentConfig& config,
                            std::uint64_t build_seed) {
  CovarianceSpec spec = config.cov;
  spec.p = config.p;
  if (spec.build_seed == 0) {
    spec.build_seed = build_seed;
  }
  return spec;
}

struct SharedInputs {
  Eigen::MatrixXd sigma_sqrt;  // empty when redraw_cov_per_rep
};

Eigen::MatrixXd rep_sigma_sqrt(const ExperimentConfig& config,
                               const SharedInputs& shared, int rep) {
  if (!config.redraw_cov_per_rep) {
    return shared.sigma_sqrt;
  }
  const CovarianceSpec spec = resolved_cov(
      config,
      derive_seed(config.master_seed, static_cast<std::uint64_t>(rep) + 1,
                  RngStream::kCovarianceStream));
  return matrix_sqrt_sym(build_covariance(spec));
}

// Full observable pipeline: latent log basis -> composition -> CLR. The
// composition step is mathematically redundant (centering removes the
// closure constant) but it is the data an analyst would actually see, so
// the experiments exercise it.
ClrMatrix simulate_clr(const Eigen::MatrixXd& log_basis_rows) {
  return clr_transform(to_composition(LogBasisMatrix::from(log_basis_rows)));
}

// Runs fn(rep) over all replications with a static-free work queue; the
// first failing replication (lowest index) wins so error reporting is
// deterministic.
void parallel_replications(const ExperimentConfig& config,
                           const std::function<void(int)>& fn) {
  int threads = config.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, config.reps);

  std::atomic<int> next{0};
  std::mutex error_mutex;
  int error_rep = -1;
  std::string error_what;
  std::atomic<bool> abort{false};

  auto worker = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const int rep = next.fetch_add(1, std::memory_order_relaxed);
      if (rep >= config.reps) break;
      try {
        fn(rep);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error_rep < 0 || rep < error_rep) {
          error_rep = rep;
          error_what = e.what();
        }
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  if (error_rep >= 0) {
    throw SimulationError(error_rep, config.master_seed, error_what);
  }
}

std::array<double, 3> rates_from(const std::vector<std::array<std::uint8_t, 3>>& rejects) {
  std::array<double, 3> rates{};
  for (const auto& r : rejects) {
    for (int j = 0; j < 3; ++j) rates[j] += r[j];
  }
  for (int j = 0; j < 3; ++j) {
    rates[j] /= static_cast<double>(rejects.size());
  }
  return rates;
}

std::array<double, 3> ses_from(const std::array<double, 3>& rates, int reps) {
  std::array<double, 3> se{};
  for (int j = 0; j < 3; ++j) {
    se[j] = std::sqrt(rates[j] * (1.0 - rates[j]) / static_cast<double>(reps));
  }
  return se;
}

std::array<std::uint8_t, 3> rejects_of(const TestTriple& t) {
  return {static_cast<std::uint8_t>(t.sum.reject),
          static_cast<std::uint8_t>(t.max.reject),
          static_cast<std::uint8_t>(t.combo.reject)};
}

SharedInputs prepare_shared(const ExperimentConfig& config) {
  SharedInputs shared;
  if (!config.redraw_cov_per_rep) {
    const CovarianceSpec spec = resolved_cov(
        config, derive_seed(config.master_seed, 0, RngStream::kCovarianceStream));
    shared.sigma_sqrt = matrix_sqrt_sym(build_covariance(spec));
  }
  return shared;
}

}  // namespace

ExperimentReport run_size_experiment(const ExperimentConfig& config) {
  if (config.mode != ExperimentMode::SizeOne &&
      config.mode != ExperimentMode::SizeTwo) {
    throw ConfigError("run_size_experiment needs a size mode");
  }
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();

  const SharedInputs shared = prepare_shared(config);
  const TestOptions opts{config.unbiased_cov};
  const Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(config.p);

  std::vector<std::array<std::uint8_t, 3>> rejects(config.reps);

  parallel_replications(config, [&](int rep) {
    const Eigen::MatrixXd sqrt_cov = rep_sigma_sqrt(config, shared, rep);
    if (config.two_sample()) {
      RngStream s1(config.master_seed, rep, 0);
      RngStream s2(config.master_seed, rep, 1);
      const ClrMatrix y1 = simulate_clr(
          sample_innovations(config.dist, config.n1, config.p, s1) * sqrt_cov);
      const ClrMatrix y2 = simulate_clr(
          sample_innovations(config.dist, config.n2, config.p, s2) * sqrt_cov);
      rejects[rep] = rejects_of(run_all_two(y1, y2, config.alpha, opts));
    } else {
      RngStream s(config.master_seed, rep, 0);
      const ClrMatrix y = simulate_clr(
          sample_innovations(config.dist, config.n, config.p, s) * sqrt_cov);
      rejects[rep] = rejects_of(run_all_one(y, mu0, config.alpha, opts));
    }
  });

  ExperimentReport report;
  report.config = config;
  report.rejection_rate = rates_from(rejects);
  report.rejection_se = ses_from(report.rejection_rate, config.reps);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

ExperimentReport run_power_experiment(const ExperimentConfig& config) {
  if (config.mode != ExperimentMode::PowerOne &&
      config.mode != ExperimentMode::PowerTwo) {
    throw ConfigError("run_power_experiment needs a power mode");
  }
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();

  const SharedInputs shared = prepare_shared(config);
  const TestOptions opts{config.unbiased_cov};
  const Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(config.p);
  const std::size_t n_m = config.m_grid.size();

  std::vector<std::vector<std::array<std::uint8_t, 3>>> rejects(
      config.reps, std::vector<std::array<std::uint8_t, 3>>(n_m));

  parallel_replications(config, [&](int rep) {
    const Eigen::MatrixXd sqrt_cov = rep_sigma_sqrt(config, shared, rep);
    if (config.two_sample()) {
      RngStream s1(config.master_seed, rep, 0);
      RngStream s2(config.master_seed, rep, 1);
      const Eigen::MatrixXd base1 =
          sample_innovations(config.dist, config.n1, config.p, s1) * sqrt_cov;
      const Eigen::MatrixXd base2 =
          sample_innovations(config.dist, config.n2, config.p, s2) * sqrt_cov;
      const ClrMatrix y2 = simulate_clr(base2);
      for (std::size_t mi = 0; mi < n_m; ++mi) {
        const Eigen::VectorXd mu =
            signal_vector({config.m_grid[mi], config.energy}, config.p);
        Eigen::MatrixXd shifted = base1;
        shifted.rowwise() += mu.transpose();
        const ClrMatrix y1 = simulate_clr(shifted);
        rejects[rep][mi] = rejects_of(run_all_two(y1, y2, config.alpha, opts));
      }
    } else {
      RngStream s(config.master_seed, rep, 0);
      const Eigen::MatrixXd base =
          sample_innovations(config.dist, config.n, config.p, s) * sqrt_cov;
      for (std::size_t mi = 0; mi < n_m; ++mi) {
        const Eigen::VectorXd mu =
            signal_vector({config.m_grid[mi], config.energy}, config.p);
        Eigen::MatrixXd shifted = base;
        shifted.rowwise() += mu.transpose();
        const ClrMatrix y = simulate_clr(shifted);
        rejects[rep][mi] = rejects_of(run_all_one(y, mu0, config.alpha, opts));
      }
    }
  });

  ExperimentReport report;
  report.config = config;
  report.power.resize(n_m);
  report.power_se.resize(n_m);
  for (std::size_t mi = 0; mi < n_m; ++mi) {
    std::array<double, 3> rates{};
    for (int rep = 0; rep < config.reps; ++rep) {
      for (int j = 0; j < 3; ++j) rates[j] += rejects[rep][mi][j];
    }
    for (int j = 0; j < 3; ++j) rates[j] /= static_cast<double>(config.reps);
    report.power[mi] = rates;
    report.power_se[mi] = ses_from(rates, config.reps);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

ExperimentReport run_null_diagnostics(const ExperimentConfig& config) {
  if (config.mode != ExperimentMode::NullDiagnostics) {
    throw ConfigError("run_null_diagnostics needs mode null-check");
  }
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();

  const SharedInputs shared = prepare_shared(config);
  const TestOptions opts{config.unbiased_cov};
  const Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(config.p);

  // Per rep: sum statistic, centered max statistic, combination statistic.
  std::vector<std::array<double, 3>> stats(config.reps);

  parallel_replications(config, [&](int rep) {
    const Eigen::MatrixXd sqrt_cov = rep_sigma_sqrt(config, shared, rep);
    RngStream s(config.master_seed, rep, 0);
    const ClrMatrix y = simulate_clr(
        sample_innovations(config.dist, config.n, config.p, s) * sqrt_cov);
    const TestTriple t = run_all_one(y, mu0, config.alpha, opts);
    stats[rep] = {t.sum.statistic, t.max.statistic, t.combo.statistic};
  });

  Diagnostics diag;
  const int reps = config.reps;
  const double n = static_cast<double>(reps);

  // KS distance of the sum statistics against N(0,1).
  {
    std::vector<double> sorted(reps);
    for (int r = 0; r < reps; ++r) sorted[r] = stats[r][0];
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double cdf = std_normal_cdf(sorted[i]);
      d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
      d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    diag.ks_sum_normal = d;
  }

  // Exceedance of the Gumbel (1-alpha)-quantile by the centered max.
  {
    const double q = gumbel_quantile(config.alpha);
    int count = 0;
    for (int r = 0; r < reps; ++r) {
      if (stats[r][1] >= q) ++count;
    }
    diag.gumbel_exceedance = count / n;
  }

  // Chi-square GOF of the combination statistic against density 2(1-w) on
  // ten equal bins; null cdf of the min-p statistic is w(2-w).
  {
    std::array<int, 10> observed{};
    for (int r = 0; r < reps; ++r) {
      int bin = static_cast<int>(stats[r][2] * 10.0);
      bin = std::clamp(bin, 0, 9);
      ++observed[bin];
    }
    double chi2 = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double lo = k / 10.0;
      const double hi = (k + 1) / 10.0;
      const double expected = n * (hi * (2.0 - hi) - lo * (2.0 - lo));
      const double delta = observed[k] - expected;
      chi2 += delta * delta / expected;
    }
    diag.combo_gof_pvalue = 1.0 - chi_square_cdf(chi2, 9);

    const double thr = combo_threshold(config.alpha);
    int rejected = 0;
    for (int r = 0; r < reps; ++r) {
      if (stats[r][2] < thr) ++rejected;
    }
    diag.combo_rejection_rate = rejected / n;
  }

  // Pearson correlation between sum and centered max statistics.
  {
    double mean_s = 0, mean_m = 0;
    for (int r = 0; r < reps; ++r) {
      mean_s += stats[r][0];
      mean_m += stats[r][1];
    }
    mean_s /= n;
    mean_m /= n;
    double css = 0, cmm = 0, csm = 0;
    for (int r = 0; r < reps; ++r) {
      const double ds = stats[r][0] - mean_s;
      const double dm = stats[r][1] - mean_m;
      css += ds * ds;
      cmm += dm * dm;
      csm += ds * dm;
    }
    diag.sum_max_corr =
        (css > 0 && cmm > 0) ? csm / std::sqrt(css * cmm) : 0.0;
  }

  ExperimentReport report;
  report.config = config;
  report.diagnostics = diag;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace hdct
