#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "hdct/composition.hpp"
#include "hdct/rng.hpp"

namespace hdct {

/// Innovation laws for the latent log basis, log W_i = mu + Sigma^{1/2} U_i.
/// A1 and A2 have unit variance; A3 is the 0.1 N(0,9) + 0.9 N(0,1) mixture
/// and is deliberately left unstandardized (variance 1.8): the statistics
/// studentize by the sample variances, so the coordinate scale cancels.
enum class Innovation { A1_Normal, A2_ScaledT3, A3_MixtureNormal };

struct DistributionSpec {
  Innovation kind = Innovation::A1_Normal;
};

enum class CovKind { B1_AR, B2_SpikedCorrelation, B3_SpatialFactor, Explicit };

/// Declarative recipe for the log-basis covariance.
///  B1: AR(1)-type Sigma_ij = 0.5^{|i-j|}.
///  B2: D^{1/2} (I + b b^T - diag(b^2)) D^{1/2}; the first floor(p^0.3)
///      entries of b are Uniform(0.7, 0.9), variances Uniform(1, 2).
///  B3: gamma gamma^T + (I - rho W)^{-1} (I - rho W^T)^{-1} with a rook-form
///      W and gamma spiked like b; rho defaults to 0.5.
/// B2/B3 draw their random parameters from build_seed; a fixed seed makes
/// the matrix a pure function of (kind, p, build_seed).
struct CovarianceSpec {
  CovKind kind = CovKind::B1_AR;
  int p = 0;
  std::uint64_t build_seed = 0;
  double rho_eps = 0.5;                 // B3 spatial autocorrelation
  Eigen::MatrixXd explicit_matrix;      // Explicit only

  static CovarianceSpec b1(int p);
  static CovarianceSpec b2(int p, std::uint64_t build_seed);
  static CovarianceSpec b3(int p, std::uint64_t build_seed,
                           double rho_eps = 0.5);
  static CovarianceSpec explicit_matrix_of(Eigen::MatrixXd sigma);
};

/// Sparse mean-shift design: m coordinates carry sqrt(energy/m) each, so the
/// squared norm is `energy` for every sparsity level.
struct SignalSpec {
  int m = 1;
  double energy = 0.5;
};

/// Builds the p x p covariance for `spec`. Deterministic given
/// (kind, p, build_seed). Throws SingularSystem if the B3 solve degenerates,
/// DomainError/NonSymmetric/NonPositiveDiagonal for bad explicit input.
Eigen::MatrixXd build_covariance(const CovarianceSpec& spec);

/// Symmetric PSD square root via eigendecomposition; eigenvalues in
/// [-1e-10 * ||Sigma||, 0) are clamped to zero, anything lower throws NotPsd.
Eigen::MatrixXd matrix_sqrt_sym(const Eigen::MatrixXd& sigma);

/// n x p matrix of i.i.d. innovations, filled row by row from `stream`.
Eigen::MatrixXd sample_innovations(DistributionSpec dist, int n, int p,
                                   RngStream& stream);

/// Latent log basis: row i = mu^T + U_i^T S with S = sigma_sqrt symmetric.
LogBasisMatrix generate_log_basis(const Eigen::VectorXd& mu,
                                  const Eigen::MatrixXd& sigma_sqrt,
                                  DistributionSpec dist, int n,
                                  RngStream& stream);

/// Exponentiates each row (shifted by its max, which the closure cancels,
/// so huge log values cannot overflow) and closes to the simplex.
CompositionMatrix to_composition(const LogBasisMatrix& w);

/// The m-sparse signal vector of SignalSpec; zero vector when energy is 0.
Eigen::VectorXd signal_vector(const SignalSpec& spec, int p);

/// floor(p^exponent) as the covariance builders use it for spike counts.
int spike_count(int p, double exponent = 0.3);

}  // namespace hdct
