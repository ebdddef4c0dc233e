#pragma once

namespace hdct {

/// Standard normal cdf Phi(x), evaluated through a rational-Chebyshev
/// approximation of the complementary error function (Cody 1969). Absolute
/// error well below 1e-12 over the whole real line.
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf on (0,1). Newton iteration with a bisection
/// safeguard, polished until |Phi(x) - q| stops improving; agrees with the
/// cdf to better than 1e-10. Throws DomainError outside (0,1).
double std_normal_quantile(double q);

/// Gumbel-type limit cdf F(x) = exp(-e^{-x/2} / sqrt(pi)) of the centered
/// maximum statistic.
double gumbel_cdf(double x);

/// (1-alpha)-quantile of the above: -log(pi) - 2 log log 1/(1-alpha).
/// Throws DomainError outside (0,1).
double gumbel_quantile(double alpha);

/// Upper tail 1 - F(x), computed with expm1 so that large statistics keep a
/// strictly positive p-value instead of rounding to 0 and collapsing the
/// min-p combination.
double gumbel_pvalue(double x);

/// Rejection boundary for the min-p combination test: 1 - sqrt(1 - alpha).
/// Under the null the combination statistic has density 2(1-w) on [0,1], so
/// the mass below this boundary is exactly alpha.
double combo_threshold(double alpha);

/// Chi-square cdf with df degrees of freedom (regularized lower incomplete
/// gamma). Used by goodness-of-fit diagnostics.
double chi_square_cdf(double x, int df);

}  // namespace hdct
