#pragma once

#include <Eigen/Dense>

#include "hdct/error.hpp"

namespace hdct {

// Row-wise absolute tolerance for composition sums.
inline constexpr double kRowSumTol = 1e-9;

// Per-row tolerance factor for CLR zero sums (scaled by p).
inline constexpr double kClrRowSumTol = 1e-8;

/// n x p matrix of strictly positive rows on the unit simplex.
/// Immutable after construction; construct through validate_composition()
/// or close().
class CompositionMatrix {
 public:
  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index p() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  friend CompositionMatrix validate_composition(const Eigen::MatrixXd&);
  friend CompositionMatrix close(const Eigen::MatrixXd&);
  explicit CompositionMatrix(Eigen::MatrixXd values)
      : values_(std::move(values)) {}
  Eigen::MatrixXd values_;
};

/// n x p matrix of finite log-scale latent abundances. Rows are identified
/// only up to an additive constant; the CLR transform quotients that out.
class LogBasisMatrix {
 public:
  static LogBasisMatrix from(Eigen::MatrixXd values);

  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index p() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  explicit LogBasisMatrix(Eigen::MatrixXd values)
      : values_(std::move(values)) {}
  Eigen::MatrixXd values_;
};

/// n x p centered log-ratio matrix; every row sums to zero (within
/// kClrRowSumTol * p).
class ClrMatrix {
 public:
  // Wraps a matrix that is already row-centered. Throws DomainError if a
  // row sum exceeds the tolerance.
  static ClrMatrix from_centered(Eigen::MatrixXd values);

  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index p() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  explicit ClrMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}
  Eigen::MatrixXd values_;
};

/// Checks that `raw` is a matrix of compositions: all entries > 0 and each
/// row summing to 1 within kRowSumTol. Throws NonPositiveEntry or
/// RowSumViolation; non-compositional input is unsuitable for log-ratio
/// analysis and is never silently repaired.
CompositionMatrix validate_composition(const Eigen::MatrixXd& raw);

/// Closure map: divides each strictly positive row by its sum. Scale-free:
/// close(t * row) == close(row) for any t > 0.
CompositionMatrix close(const Eigen::MatrixXd& raw);

}  // namespace hdct
