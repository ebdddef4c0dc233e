#include "hdct/composition.hpp"

#include <cmath>

namespace hdct {

namespace {

void check_shape(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 1) {
    throw DomainError("composition matrix needs at least one row");
  }
  if (raw.cols() < 2) {
    throw DomainError("composition matrix needs at least two components");
  }
}

void check_positive(const Eigen::MatrixXd& raw) {
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    for (Eigen::Index j = 0; j < raw.cols(); ++j) {
      if (!(raw(i, j) > 0.0) || !std::isfinite(raw(i, j))) {
        throw NonPositiveEntry(i, j);
      }
    }
  }
}

}  // namespace

CompositionMatrix validate_composition(const Eigen::MatrixXd& raw) {
  check_shape(raw);
  check_positive(raw);
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    const double sum = raw.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTol) {
      throw RowSumViolation(i, sum);
    }
  }
  return CompositionMatrix(raw);
}

CompositionMatrix close(const Eigen::MatrixXd& raw) {
  check_shape(raw);
  check_positive(raw);
  Eigen::MatrixXd closed = raw;
  for (Eigen::Index i = 0; i < closed.rows(); ++i) {
    closed.row(i) /= closed.row(i).sum();
  }
  return CompositionMatrix(std::move(closed));
}

LogBasisMatrix LogBasisMatrix::from(Eigen::MatrixXd values) {
  if (values.rows() < 1 || values.cols() < 2) {
    throw DomainError("log basis matrix needs n >= 1 and p >= 2");
  }
  if (!values.allFinite()) {
    throw DomainError("log basis matrix has non-finite entries");
  }
  return LogBasisMatrix(std::move(values));
}

ClrMatrix ClrMatrix::from_centered(Eigen::MatrixXd values) {
  if (values.rows() < 1 || values.cols() < 2) {
    throw DomainError("CLR matrix needs n >= 1 and p >= 2");
  }
  const double tol = kClrRowSumTol * static_cast<double>(values.cols());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    const double sum = values.row(i).sum();
    if (std::abs(sum) > tol) {
      throw DomainError("CLR row " + std::to_string(i) + " sums to " +
                        std::to_string(sum) + ", expected 0");
    }
  }
  return ClrMatrix(std::move(values));
}

}  // namespace hdct
