#include "hdct/datagen.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace hdct {

CovarianceSpec CovarianceSpec::b1(int p) {
  CovarianceSpec s;
  s.kind = CovKind::B1_AR;
  s.p = p;
  return s;
}

CovarianceSpec CovarianceSpec::b2(int p, std::uint64_t build_seed) {
  CovarianceSpec s;
  s.kind = CovKind::B2_SpikedCorrelation;
  s.p = p;
  s.build_seed = build_seed;
  return s;
}

CovarianceSpec CovarianceSpec::b3(int p, std::uint64_t build_seed,
                                  double rho_eps) {
  CovarianceSpec s;
  s.kind = CovKind::B3_SpatialFactor;
  s.p = p;
  s.build_seed = build_seed;
  s.rho_eps = rho_eps;
  return s;
}

CovarianceSpec CovarianceSpec::explicit_matrix_of(Eigen::MatrixXd sigma) {
  CovarianceSpec s;
  s.kind = CovKind::Explicit;
  s.p = static_cast<int>(sigma.rows());
  s.explicit_matrix = std::move(sigma);
  return s;
}

int spike_count(int p, double exponent) {
  // Tiny epsilon so that an exactly-integer power is not floored down by
  // one ulp of rounding.
  return static_cast<int>(std::floor(
      std::pow(static_cast<double>(p), exponent) + 1e-9));
}

namespace {

Eigen::MatrixXd build_b1(int p) {
  Eigen::MatrixXd sigma(p, p);
  for (int i = 0; i < p; ++i) {
    double v = 1.0;
    sigma(i, i) = 1.0;
    for (int j = i + 1; j < p; ++j) {
      v *= 0.5;  // exact powers of two
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  }
  return sigma;
}

Eigen::MatrixXd build_b2(int p, std::uint64_t build_seed) {
  RngStream rng(build_seed, 0, RngStream::kCovarianceStream);
  Eigen::VectorXd sd(p);
  for (int i = 0; i < p; ++i) {
    sd(i) = std::sqrt(1.0 + rng.uniform());  // sigma_i^2 ~ Uniform(1,2)
  }
  const int k = spike_count(p);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  for (int i = 0; i < k; ++i) {
    b(i) = 0.7 + 0.2 * rng.uniform();
  }
  // R = I + b b^T - diag(b^2) has unit diagonal by construction.
  Eigen::MatrixXd r = b * b.transpose();
  r.diagonal().setConstant(1.0);
  return sd.asDiagonal() * r * sd.asDiagonal();
}

Eigen::MatrixXd rook_matrix(int p) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  w(0, 1) = 1.0;
  w(p - 1, p - 2) = 1.0;
  for (int i = 1; i + 1 < p; ++i) {
    w(i, i - 1) = 0.5;
    w(i, i + 1) = 0.5;
  }
  return w;
}

Eigen::MatrixXd build_b3(int p, std::uint64_t build_seed, double rho) {
  RngStream rng(build_seed, 1, RngStream::kCovarianceStream);
  const int k = spike_count(p);
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(p);
  for (int i = 0; i < k; ++i) {
    gamma(i) = 0.7 + 0.2 * rng.uniform();
  }

  const Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(p, p) - rho * rook_matrix(p);
  const Eigen::MatrixXd inv =
      m.partialPivLu().solve(Eigen::MatrixXd::Identity(p, p));
  const double residual =
      (m * inv - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual) || residual > 1e-6) {
    throw SingularSystem("I - rho W is numerically singular (residual " +
                         std::to_string(residual) + ")");
  }
  return gamma * gamma.transpose() + inv * inv.transpose();
}

}  // namespace

Eigen::MatrixXd build_covariance(const CovarianceSpec& spec) {
  if (spec.kind != CovKind::Explicit && spec.p < 2) {
    throw DomainError("covariance needs p >= 2");
  }
  switch (spec.kind) {
    case CovKind::B1_AR:
      return build_b1(spec.p);
    case CovKind::B2_SpikedCorrelation:
      return build_b2(spec.p, spec.build_seed);
    case CovKind::B3_SpatialFactor:
      return build_b3(spec.p, spec.build_seed, spec.rho_eps);
    case CovKind::Explicit: {
      const Eigen::MatrixXd& sigma = spec.explicit_matrix;
      if (sigma.rows() != sigma.cols() || sigma.rows() < 2) {
        throw DomainError("explicit covariance must be square with p >= 2");
      }
      const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
      if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw NonSymmetric();
      }
      for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
        if (!(sigma(i, i) > 0.0)) {
          throw NonPositiveDiagonal(i);
        }
      }
      return sigma;
    }
  }
  throw DomainError("unknown covariance kind");
}

Eigen::MatrixXd matrix_sqrt_sym(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols()) {
    throw NonSymmetric();
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NonSymmetric();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed");
  }
  Eigen::VectorXd values = solver.eigenvalues();
  const double norm = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -1e-10 * norm) {
      throw NotPsd(values(i));
    }
    values(i) = std::max(values(i), 0.0);
  }
  const Eigen::MatrixXd root = solver.eigenvectors() *
                               values.cwiseSqrt().asDiagonal() *
                               solver.eigenvectors().transpose();
  return 0.5 * (root + root.transpose());
}

Eigen::MatrixXd sample_innovations(DistributionSpec dist, int n, int p,
                                   RngStream& stream) {
  if (n < 1 || p < 1) {
    throw DomainError("innovations need n >= 1 and p >= 1");
  }
  Eigen::MatrixXd u(n, p);
  switch (dist.kind) {
    case Innovation::A1_Normal:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
          u(i, j) = stream.normal();
        }
      }
      break;
    case Innovation::A2_ScaledT3:
      // t(3)/sqrt(3): normal over sqrt(chi^2_3 / 3), then divided by
      // sqrt(3); unit variance overall.
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
          const double z = stream.normal();
          const double c1 = stream.normal();
          const double c2 = stream.normal();
          const double c3 = stream.normal();
          const double chi = c1 * c1 + c2 * c2 + c3 * c3;
          u(i, j) = z / std::sqrt(chi);
        }
      }
      break;
    case Innovation::A3_MixtureNormal:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
          const double pick = stream.uniform();
          const double z = stream.normal();
          u(i, j) = (pick < 0.1) ? 3.0 * z : z;
        }
      }
      break;
  }
  return u;
}

LogBasisMatrix generate_log_basis(const Eigen::VectorXd& mu,
                                  const Eigen::MatrixXd& sigma_sqrt,
                                  DistributionSpec dist, int n,
                                  RngStream& stream) {
  const int p = static_cast<int>(mu.size());
  if (sigma_sqrt.rows() != p || sigma_sqrt.cols() != p) {
    throw DimensionMismatch("sigma_sqrt shape does not match mu");
  }
  Eigen::MatrixXd w =
      sample_innovations(dist, n, p, stream) * sigma_sqrt;
  w.rowwise() += mu.transpose();
  return LogBasisMatrix::from(std::move(w));
}

CompositionMatrix to_composition(const LogBasisMatrix& w) {
  Eigen::MatrixXd shifted = w.values();
  shifted.colwise() -= w.values().rowwise().maxCoeff();
  return close(shifted.array().exp());
}

Eigen::VectorXd signal_vector(const SignalSpec& spec, int p) {
  if (spec.m < 1 || spec.m > p) {
    throw DomainError("signal sparsity m must satisfy 1 <= m <= p");
  }
  if (spec.energy < 0.0) {
    throw DomainError("signal energy must be non-negative");
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(p);
  const double delta = std::sqrt(spec.energy / static_cast<double>(spec.m));
  mu.head(spec.m).setConstant(delta);
  return mu;
}

}  // namespace hdct
