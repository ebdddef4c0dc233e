#include "hdct/moments.hpp"

#include <cmath>

namespace hdct {

namespace {

void check_variances(const Eigen::VectorXd& var_diag) {
  for (Eigen::Index j = 0; j < var_diag.size(); ++j) {
    if (!(var_diag(j) > kDegenerateVarianceTol)) {
      throw DegenerateVariance(j, var_diag(j));
    }
  }
}

// Gram path wins when its n^2 p cost is below the naive n p^2.
double corr_trace_sq_auto(const Eigen::MatrixXd& deviations,
                          const Eigen::VectorXd& var_diag, int divisor) {
  if (deviations.rows() < deviations.cols()) {
    return corr_trace_sq_gram(deviations, var_diag, divisor);
  }
  return corr_trace_sq_naive(deviations, var_diag, divisor);
}

}  // namespace

double corr_trace_sq_gram(const Eigen::MatrixXd& deviations,
                          const Eigen::VectorXd& var_diag, int divisor) {
  if (deviations.cols() != var_diag.size()) {
    throw DimensionMismatch("deviations and var_diag disagree on p");
  }
  check_variances(var_diag);
  const Eigen::ArrayXd inv_sd = var_diag.array().sqrt().inverse();
  const Eigen::MatrixXd scaled =
      deviations.array().rowwise() * inv_sd.transpose();
  const Eigen::MatrixXd gram = scaled * scaled.transpose();
  const double div = static_cast<double>(divisor);
  return gram.squaredNorm() / (div * div);
}

double corr_trace_sq_naive(const Eigen::MatrixXd& deviations,
                           const Eigen::VectorXd& var_diag, int divisor) {
  if (deviations.cols() != var_diag.size()) {
    throw DimensionMismatch("deviations and var_diag disagree on p");
  }
  check_variances(var_diag);
  const Eigen::MatrixXd cov =
      (deviations.transpose() * deviations) / static_cast<double>(divisor);
  const Eigen::ArrayXd inv_sd = var_diag.array().sqrt().inverse();
  const Eigen::MatrixXd corr =
      cov.array() * (inv_sd.matrix() * inv_sd.matrix().transpose()).array();
  return corr.squaredNorm();
}

MomentSummary one_sample_moments(const ClrMatrix& y, MomentOptions opts) {
  const Eigen::Index n = y.n();
  const Eigen::Index p = y.p();
  if (n < 5) {
    throw TooFewSamples(n, 5);
  }
  MomentSummary s;
  s.mean = y.values().colwise().mean();
  Eigen::MatrixXd dev = y.values().rowwise() - s.mean.transpose();
  const int divisor = opts.unbiased_cov ? static_cast<int>(n) - 1
                                        : static_cast<int>(n);
  s.var_diag = dev.colwise().squaredNorm() / static_cast<double>(divisor);
  check_variances(s.var_diag);
  s.corr_trace_sq = corr_trace_sq_auto(dev, s.var_diag, divisor);
  s.n_effective = static_cast<int>(n);
  s.cpn = 1.0;
  (void)p;
  return s;
}

MomentSummary two_sample_moments(const ClrMatrix& y1, const ClrMatrix& y2,
                                 MomentOptions opts) {
  if (y1.p() != y2.p()) {
    throw DimensionMismatch("samples disagree on p: " + std::to_string(y1.p()) +
                            " vs " + std::to_string(y2.p()));
  }
  const Eigen::Index n1 = y1.n();
  const Eigen::Index n2 = y2.n();
  const Eigen::Index total = n1 + n2;
  if (n1 < 2 || n2 < 2) {
    throw TooFewSamples(std::min(n1, n2), 2);
  }
  if (total < 5) {
    throw TooFewSamples(total, 5);
  }

  const Eigen::VectorXd mean1 = y1.values().colwise().mean();
  const Eigen::VectorXd mean2 = y2.values().colwise().mean();

  Eigen::MatrixXd dev(total, y1.p());
  dev.topRows(n1) = y1.values().rowwise() - mean1.transpose();
  dev.bottomRows(n2) = y2.values().rowwise() - mean2.transpose();

  MomentSummary s;
  s.mean = mean1 - mean2;
  const int divisor = opts.unbiased_cov ? static_cast<int>(total) - 2
                                        : static_cast<int>(total);
  s.var_diag = dev.colwise().squaredNorm() / static_cast<double>(divisor);
  check_variances(s.var_diag);
  s.corr_trace_sq = corr_trace_sq_auto(dev, s.var_diag, divisor);
  s.n_effective = static_cast<int>(total);
  s.cpn = 1.0 + s.corr_trace_sq / std::pow(static_cast<double>(y1.p()), 1.5);
  return s;
}

}  // namespace hdct
