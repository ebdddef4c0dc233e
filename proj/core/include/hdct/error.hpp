#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hdct {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input data / validation failures.
class InputError : public Error {
 public:
  using Error::Error;
};

// Numerical failures (estimates outside their sane regime, non-PSD inputs, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Bad configuration (flags, experiment setups, out-of-domain parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NonPositiveEntry : public InputError {
 public:
  NonPositiveEntry(std::int64_t row, std::int64_t col)
      : InputError("non-positive entry at row " + std::to_string(row) +
                   ", col " + std::to_string(col)),
        row(row),
        col(col) {}
  std::int64_t row;
  std::int64_t col;
};

class RowSumViolation : public InputError {
 public:
  RowSumViolation(std::int64_t row, double sum)
      : InputError("row " + std::to_string(row) + " sums to " +
                   std::to_string(sum) + ", expected 1"),
        row(row),
        sum(sum) {}
  std::int64_t row;
  double sum;
};

class TooFewSamples : public InputError {
 public:
  TooFewSamples(std::int64_t n, std::int64_t required)
      : InputError("need at least " + std::to_string(required) +
                   " samples, got " + std::to_string(n)) {}
};

class DimensionMismatch : public InputError {
 public:
  explicit DimensionMismatch(const std::string& what) : InputError(what) {}
};

class NonCenteredMu0 : public InputError {
 public:
  explicit NonCenteredMu0(double sum)
      : InputError("mu0 is not centered: coordinates sum to " +
                   std::to_string(sum)) {}
};

class GroupError : public InputError {
 public:
  explicit GroupError(const std::string& what) : InputError(what) {}
};

class ParseError : public InputError {
 public:
  ParseError(std::int64_t row, std::int64_t col, const std::string& what)
      : InputError("parse error at row " + std::to_string(row) + ", col " +
                   std::to_string(col) + ": " + what),
        row(row),
        col(col) {}
  std::int64_t row;
  std::int64_t col;
};

class DegenerateVariance : public NumericalError {
 public:
  DegenerateVariance(std::int64_t col, double value)
      : NumericalError("degenerate variance " + std::to_string(value) +
                       " in column " + std::to_string(col)),
        col(col),
        value(value) {}
  std::int64_t col;
  double value;
};

class NegativeVarianceEstimate : public NumericalError {
 public:
  explicit NegativeVarianceEstimate(double bracket)
      : NumericalError(
            "variance bracket tr(R^2) correction is non-positive (" +
            std::to_string(bracket) +
            "); n and p are outside the statistic's regime") {}
};

class NotPsd : public NumericalError {
 public:
  explicit NotPsd(double min_eigenvalue)
      : NumericalError("matrix is not positive semi-definite (min eigenvalue " +
                       std::to_string(min_eigenvalue) + ")") {}
};

class NonSymmetric : public NumericalError {
 public:
  NonSymmetric() : NumericalError("matrix is not symmetric") {}
};

class NonPositiveDiagonal : public NumericalError {
 public:
  explicit NonPositiveDiagonal(std::int64_t index)
      : NumericalError("non-positive diagonal entry at index " +
                       std::to_string(index)) {}
};

class SingularSystem : public NumericalError {
 public:
  explicit SingularSystem(const std::string& what) : NumericalError(what) {}
};

class DomainError : public ConfigError {
 public:
  explicit DomainError(const std::string& what) : ConfigError(what) {}
};

}  // namespace hdct
