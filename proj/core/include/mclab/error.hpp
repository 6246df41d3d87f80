#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on state spaces of different size or labeling.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter violates an operation's precondition (simplex, parity, ranges).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The stationary measure is ambiguous: the kernel has several recurrent classes.
class ReducibleKernelError : public Error {
 public:
  explicit ReducibleKernelError(std::vector<std::vector<std::size_t>> classes);
  const std::vector<std::vector<std::size_t>>& recurrent_classes() const noexcept { return classes_; }

 private:
  std::vector<std::vector<std::size_t>> classes_;
};

/// A measure that must be strictly positive has an entry at or below the positivity floor.
class NonPositiveMeasureError : public Error {
 public:
  NonPositiveMeasureError(std::string what, std::size_t state, double value);
  std::size_t state() const noexcept { return state_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t state_;
  double value_;
};

/// Two measures are not related by the kernel they were supplied with.
class InconsistentMeasureError : public Error {
 public:
  InconsistentMeasureError(std::string what, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Exhaustive word-tree enumeration would visit more nodes than allowed.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::size_t required, std::size_t budget);
  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

/// Malformed JSON input; `field` is a JSON-pointer-like path to the offending value.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mclab
