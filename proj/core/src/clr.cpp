#include "hdct/clr.hpp"

namespace hdct {

Eigen::MatrixXd center_rows(const Eigen::MatrixXd& m) {
  if (m.cols() < 2) {
    throw DomainError("center_rows needs p >= 2");
  }
  Eigen::MatrixXd out = m;
  out.colwise() -= m.rowwise().mean();
  return out;
}

ClrMatrix clr_transform(const CompositionMatrix& x) {
  return ClrMatrix::from_centered(center_rows(x.values().array().log()));
}

ClrMatrix clr_from_log_basis(const LogBasisMatrix& w) {
  return ClrMatrix::from_centered(center_rows(w.values()));
}

}  // namespace hdct
