#pragma once

#include <Eigen/Dense>

#include "hdct/composition.hpp"

namespace hdct {

/// Subtracts each row's arithmetic mean. This applies the rank p-1 centering
/// projector G = I - (1/p) 11^T without materializing it; O(np) instead of
/// O(np^2). Idempotent, annihilates constant rows.
Eigen::MatrixXd center_rows(const Eigen::MatrixXd& m);

/// Centered log-ratio transform: log of each component minus the row mean of
/// the logs. Uniform rows map to zero rows.
ClrMatrix clr_transform(const CompositionMatrix& x);

/// CLR directly from log-scale basis data. Equal to clr_transform of the
/// closed exponential, since row-centering kills the per-row additive
/// constant that separates a log basis from its composition's logs.
ClrMatrix clr_from_log_basis(const LogBasisMatrix& w);

}  // namespace hdct
