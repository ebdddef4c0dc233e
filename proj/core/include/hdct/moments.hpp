#pragma once

#include <Eigen/Dense>

#include "hdct/composition.hpp"

namespace hdct {

// Sample variances at or below this are treated as degenerate (a constant
// CLR column); the statistics divide by them.
inline constexpr double kDegenerateVarianceTol = 1e-14;

/// Sample moments feeding the test statistics. Only the pieces the
/// statistics need are kept: no full p x p covariance is stored.
struct MomentSummary {
  Eigen::VectorXd mean;      // column means, or mean difference (two-sample)
  Eigen::VectorXd var_diag;  // diagonal of the (pooled) sample covariance
  double corr_trace_sq = 0;  // trace of the squared sample correlation matrix
  int n_effective = 0;       // n, or n1 + n2
  double cpn = 1.0;          // 1 + corr_trace_sq / p^{3/2}; 1 for one sample
};

struct MomentOptions {
  // The statistics are calibrated for covariance divisors n (one-sample)
  // and N (pooled). This switches to the unbiased n-1 / N-2 divisors; the
  // centering constants in the statistics are left untouched.
  bool unbiased_cov = false;
};

/// One-sample moments of a CLR matrix: column means, diagonal variances with
/// divisor n, and tr(R_hat^2). Requires n >= 5.
/// Throws TooFewSamples, DegenerateVariance.
MomentSummary one_sample_moments(const ClrMatrix& y, MomentOptions opts = {});

/// Pooled two-sample moments: mean difference, pooled diagonal variances
/// with divisor N = n1 + n2, pooled tr(R_hat^2), and the correction factor
/// c_{p,N} = 1 + tr(R_hat^2) / p^{3/2}. Requires shared p, N >= 5,
/// n1, n2 >= 2. Throws DimensionMismatch, TooFewSamples, DegenerateVariance.
MomentSummary two_sample_moments(const ClrMatrix& y1, const ClrMatrix& y2,
                                 MomentOptions opts = {});

/// tr(R_hat^2) via the n x n Gram matrix of variance-scaled deviation rows:
///   sum_{k,l} (ytil_k^T D^{-1} ytil_l)^2 / divisor^2.
/// Algebraically identical to the naive p x p formula, O(n^2 p) instead of
/// O(n p^2). `deviations` holds observation deviations from their (group)
/// means, `var_diag` the matching covariance diagonal.
double corr_trace_sq_gram(const Eigen::MatrixXd& deviations,
                          const Eigen::VectorXd& var_diag, int divisor);

/// tr(R_hat^2) through the explicit sample correlation matrix, O(n p^2).
/// Preferred when n >= p.
double corr_trace_sq_naive(const Eigen::MatrixXd& deviations,
                           const Eigen::VectorXd& var_diag, int divisor);

}  // namespace hdct
