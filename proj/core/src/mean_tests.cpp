#include "hdct/mean_tests.hpp"

#include <cmath>

#include "hdct/distributions.hpp"

namespace hdct {

namespace {

constexpr double kMu0SumTol = 1e-8;

void check_mu0(const Eigen::VectorXd& mu0_clr, Eigen::Index p) {
  if (mu0_clr.size() != p) {
    throw DimensionMismatch("mu0 has length " + std::to_string(mu0_clr.size()) +
                            ", data has p = " + std::to_string(p));
  }
  const double sum = mu0_clr.sum();
  if (std::abs(sum) > kMu0SumTol) {
    throw NonCenteredMu0(sum);
  }
}

double studentized_quadform(const MomentSummary& m,
                            const Eigen::VectorXd& shift) {
  return ((m.mean - shift).array().square() / m.var_diag.array()).sum();
}

double max_studentized_sq(const MomentSummary& m, const Eigen::VectorXd& shift) {
  return ((m.mean - shift).array().square() / m.var_diag.array()).maxCoeff();
}

TestOutcome make_sum_outcome(double quadform, double sample_factor,
                             double centering, double bracket, double cpn,
                             double alpha, TestFamily family, int n_effective,
                             int p) {
  if (!(bracket > 0.0)) {
    throw NegativeVarianceEstimate(bracket);
  }
  TestOutcome out;
  out.statistic = (sample_factor * quadform - centering) /
                  std::sqrt(2.0 * bracket * cpn);
  out.pvalue = std_normal_cdf(-out.statistic);
  out.threshold = std_normal_quantile(1.0 - alpha);
  out.alpha = alpha;
  out.reject = out.statistic >= out.threshold;
  out.family = family;
  out.n_effective = n_effective;
  out.p = p;
  return out;
}

TestOutcome make_max_outcome(double max_sq, double sample_factor, double alpha,
                             TestFamily family, int n_effective, int p) {
  const double pd = static_cast<double>(p);
  TestOutcome out;
  out.statistic =
      sample_factor * max_sq - 2.0 * std::log(pd) + std::log(std::log(pd));
  out.pvalue = gumbel_pvalue(out.statistic);
  out.threshold = gumbel_quantile(alpha);
  out.alpha = alpha;
  out.reject = out.statistic >= out.threshold;
  out.family = family;
  out.n_effective = n_effective;
  out.p = p;
  return out;
}

TestOutcome make_combo_outcome(const TestOutcome& sum, const TestOutcome& max,
                               double alpha, TestFamily family) {
  TestOutcome out;
  out.statistic = std::min(sum.pvalue, max.pvalue);
  // Min of two independent uniforms: cdf 1 - (1-w)^2 = w (2 - w).
  out.pvalue = out.statistic * (2.0 - out.statistic);
  out.threshold = combo_threshold(alpha);
  out.alpha = alpha;
  out.reject = out.statistic < out.threshold;
  out.family = family;
  out.n_effective = sum.n_effective;
  out.p = sum.p;
  return out;
}

TestTriple triple_from_moments_one(const MomentSummary& m,
                                   const Eigen::VectorXd& mu0_clr, double alpha,
                                   Eigen::Index p_idx) {
  const int n = m.n_effective;
  const int p = static_cast<int>(p_idx);
  const double pd = static_cast<double>(p);
  const double nd = static_cast<double>(n);

  const double quadform = studentized_quadform(m, mu0_clr);
  const double centering = (nd - 1.0) * pd / (nd - 3.0);
  const double bracket = m.corr_trace_sq - pd * pd / (nd - 1.0);

  TestTriple t;
  t.sum = make_sum_outcome(quadform, nd, centering, bracket, 1.0, alpha,
                           TestFamily::SumOne, n, p);
  t.max = make_max_outcome(max_studentized_sq(m, mu0_clr), nd, alpha,
                           TestFamily::MaxOne, n, p);
  t.combo = make_combo_outcome(t.sum, t.max, alpha, TestFamily::ComboOne);
  return t;
}

TestTriple triple_from_moments_two(const MomentSummary& m, int n1, int n2,
                                   double alpha, Eigen::Index p_idx) {
  const int p = static_cast<int>(p_idx);
  const double pd = static_cast<double>(p);
  const double total = static_cast<double>(n1) + static_cast<double>(n2);
  const double factor = static_cast<double>(n1) * static_cast<double>(n2) / total;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p_idx);

  const double quadform = studentized_quadform(m, zero);
  const double centering = (total - 2.0) * pd / (total - 4.0);
  const double bracket = m.corr_trace_sq - pd * pd / (total - 2.0);

  TestTriple t;
  t.sum = make_sum_outcome(quadform, factor, centering, bracket, m.cpn, alpha,
                           TestFamily::SumTwo, m.n_effective, p);
  t.max = make_max_outcome(max_studentized_sq(m, zero), factor, alpha,
                           TestFamily::MaxTwo, m.n_effective, p);
  t.combo = make_combo_outcome(t.sum, t.max, alpha, TestFamily::ComboTwo);
  return t;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
}

}  // namespace

const char* family_name(TestFamily family) {
  switch (family) {
    case TestFamily::SumOne:
    case TestFamily::SumTwo:
      return "sum";
    case TestFamily::MaxOne:
    case TestFamily::MaxTwo:
      return "max";
    case TestFamily::ComboOne:
    case TestFamily::ComboTwo:
      return "com";
  }
  return "?";
}

TestTriple run_all_one(const ClrMatrix& y, const Eigen::VectorXd& mu0_clr,
                       double alpha, TestOptions opts) {
  check_alpha(alpha);
  check_mu0(mu0_clr, y.p());
  const MomentSummary m = one_sample_moments(y, {opts.unbiased_cov});
  return triple_from_moments_one(m, mu0_clr, alpha, y.p());
}

TestTriple run_all_two(const ClrMatrix& y1, const ClrMatrix& y2, double alpha,
                       TestOptions opts) {
  check_alpha(alpha);
  const MomentSummary m = two_sample_moments(y1, y2, {opts.unbiased_cov});
  return triple_from_moments_two(m, static_cast<int>(y1.n()),
                                 static_cast<int>(y2.n()), alpha, y1.p());
}

TestOutcome sum_test_one(const ClrMatrix& y, const Eigen::VectorXd& mu0_clr,
                         double alpha, TestOptions opts) {
  return run_all_one(y, mu0_clr, alpha, opts).sum;
}

TestOutcome max_test_one(const ClrMatrix& y, const Eigen::VectorXd& mu0_clr,
                         double alpha, TestOptions opts) {
  return run_all_one(y, mu0_clr, alpha, opts).max;
}

TestOutcome combo_test_one(const ClrMatrix& y, const Eigen::VectorXd& mu0_clr,
                           double alpha, TestOptions opts) {
  return run_all_one(y, mu0_clr, alpha, opts).combo;
}

TestOutcome sum_test_two(const ClrMatrix& y1, const ClrMatrix& y2, double alpha,
                         TestOptions opts) {
  return run_all_two(y1, y2, alpha, opts).sum;
}

TestOutcome max_test_two(const ClrMatrix& y1, const ClrMatrix& y2, double alpha,
                         TestOptions opts) {
  return run_all_two(y1, y2, alpha, opts).max;
}

TestOutcome combo_test_two(const ClrMatrix& y1, const ClrMatrix& y2,
                           double alpha, TestOptions opts) {
  return run_all_two(y1, y2, alpha, opts).combo;
}

double theoretical_power_sum(const Eigen::MatrixXd& sigma,
                             const Eigen::VectorXd& mu_w_diff, double n_eff,
                             double alpha) {
  check_alpha(alpha);
  if (sigma.rows() != sigma.cols()) {
    throw NonSymmetric();
  }
  if (mu_w_diff.size() != sigma.rows()) {
    throw DimensionMismatch("signal vector and covariance disagree on p");
  }
  if (!(n_eff > 0.0)) {
    throw DomainError("n_eff must be positive");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw NonSymmetric();
  }

  // Gamma = G Sigma G by double centering; Sigma is explicit here, so the
  // p x p materialization is fine.
  const Eigen::VectorXd row_means = sigma.rowwise().mean();
  const double grand_mean = row_means.mean();
  Eigen::MatrixXd gamma = sigma;
  gamma.colwise() -= row_means;
  gamma.rowwise() -= row_means.transpose();
  gamma.array() += grand_mean;

  const Eigen::VectorXd diag = gamma.diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(diag(i) > 0.0)) {
      throw NonPositiveDiagonal(i);
    }
  }

  const Eigen::ArrayXd inv_sd = diag.array().sqrt().inverse();
  const double trace_t_sq =
      (gamma.array() * (inv_sd.matrix() * inv_sd.matrix().transpose()).array())
          .square()
          .sum();

  const Eigen::VectorXd centered_mu =
      mu_w_diff.array() - mu_w_diff.mean();
  const double signal = (centered_mu.array().square() / diag.array()).sum();

  const double shift = n_eff * signal / std::sqrt(2.0 * trace_t_sq);
  return std_normal_cdf(-std_normal_quantile(1.0 - alpha) + shift);
}

}  // namespace hdct
