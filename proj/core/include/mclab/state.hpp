#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace mclab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Row sums within this distance of 1 are renormalized on construction; anything further is rejected.
inline constexpr double kRenormalizeTolerance = 1e-9;

/// Finite state space {0, ..., size-1} with display labels.
///
/// Copies share the label storage, so passing spaces around is cheap and
/// equality between copies of the same space is a pointer comparison.
class StateSpace {
 public:
  /// Labels "0", "1", ..., "size-1".
  explicit StateSpace(std::size_t size);
  /// Throws InvalidArgument on an empty or non-unique label list.
  explicit StateSpace(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  const std::string& label(std::size_t x) const { return labels_->at(x); }
  /// Index of `label`, or size() when absent.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b);

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// Row-stochastic square matrix over a StateSpace. Immutable; copies share storage.
class StochasticKernel {
 public:
  /// Validates entries (finite, non-negative) and row sums (|sum-1| <= kRenormalizeTolerance),
  /// then divides each row by its sum. Throws InvalidArgument or DimensionError.
  StochasticKernel(StateSpace space, Matrix entries);
  /// Same, with default labels.
  explicit StochasticKernel(Matrix entries);

  static StochasticKernel identity(const StateSpace& space);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_.size(); }
  const Matrix& matrix() const noexcept { return *entries_; }
  double operator()(std::size_t x, std::size_t y) const { return (*entries_)(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)); }

  /// Entrywise equality of matrices on equal spaces.
  friend bool operator==(const StochasticKernel& a, const StochasticKernel& b);

 private:
  StateSpace space_;
  std::shared_ptr<const Matrix> entries_;
};

/// Probability vector over a StateSpace.
class ProbMeasure {
 public:
  /// Validates like a kernel row and renormalizes to sum 1.
  ProbMeasure(StateSpace space, Vector weights);
  explicit ProbMeasure(Vector weights);

  static ProbMeasure uniform(const StateSpace& space);
  static ProbMeasure dirac(const StateSpace& space, std::size_t x);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_.size(); }
  const Vector& weights() const noexcept { return weights_; }
  double operator[](std::size_t x) const { return weights_(static_cast<Eigen::Index>(x)); }
  /// True iff every weight is > 0.
  bool positive() const noexcept { return positive_; }
  double min_weight() const { return weights_.minCoeff(); }

 private:
  StateSpace space_;
  Vector weights_;
  bool positive_ = false;
};

/// Divides every row by its sum and returns the largest |sum - 1| seen.
double renormalize_rows(Matrix& m);

/// Total variation distance (1/2) * sum |a - b|.
double tv_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

}  // namespace mclab
