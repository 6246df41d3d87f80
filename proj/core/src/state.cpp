#include "mclab/state.hpp"

#include "mclab/error.hpp"

#include <cmath>
#include <unordered_set>

namespace mclab {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

void check_entries(const Eigen::Ref<const Matrix>& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidArgument(std::string(what) + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is negative or not finite");
      }
    }
    const double s = m.row(i).sum();
    if (std::abs(s - 1.0) > kRenormalizeTolerance) {
      throw InvalidArgument(std::string(what) + ": row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
  }
}

}  // namespace

StateSpace::StateSpace(std::size_t size) : StateSpace(default_labels(size)) {}

StateSpace::StateSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw InvalidArgument("state space must have at least one state");
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw InvalidArgument("state labels must be unique");
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

std::size_t StateSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_->size(); ++i) {
    if ((*labels_)[i] == label) return i;
  }
  return labels_->size();
}

bool operator==(const StateSpace& a, const StateSpace& b) {
  return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
}

StochasticKernel::StochasticKernel(StateSpace space, Matrix entries) : space_(std::move(space)) {
  const auto n = static_cast<Eigen::Index>(space_.size());
  if (entries.rows() != n || entries.cols() != n) {
    throw DimensionError("kernel matrix is " + std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()) +
                         " but the state space has " + std::to_string(n) + " states");
  }
  check_entries(entries, "stochastic kernel");
  renormalize_rows(entries);
  entries_ = std::make_shared<const Matrix>(std::move(entries));
}

StochasticKernel::StochasticKernel(Matrix entries)
    : StochasticKernel(StateSpace(static_cast<std::size_t>(std::max<Eigen::Index>(entries.rows(), 1))), entries) {}

StochasticKernel StochasticKernel::identity(const StateSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return StochasticKernel(space, Matrix::Identity(n, n));
}

bool operator==(const StochasticKernel& a, const StochasticKernel& b) {
  return a.space_ == b.space_ && (a.entries_ == b.entries_ || *a.entries_ == *b.entries_);
}

ProbMeasure::ProbMeasure(StateSpace space, Vector weights) : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != static_cast<Eigen::Index>(space_.size())) {
    throw DimensionError("measure has " + std::to_string(weights_.size()) + " weights but the state space has " +
                         std::to_string(space_.size()) + " states");
  }
  check_entries(weights_.transpose(), "probability measure");
  weights_ /= weights_.sum();
  positive_ = weights_.minCoeff() > 0.0;
}

ProbMeasure::ProbMeasure(Vector weights)
    : ProbMeasure(StateSpace(static_cast<std::size_t>(std::max<Eigen::Index>(weights.size(), 1))), weights) {}

ProbMeasure ProbMeasure::uniform(const StateSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return ProbMeasure(space, Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

ProbMeasure ProbMeasure::dirac(const StateSpace& space, std::size_t x) {
  if (x >= space.size()) throw InvalidArgument("dirac: state " + std::to_string(x) + " out of range");
  Vector w = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  w(static_cast<Eigen::Index>(x)) = 1.0;
  return ProbMeasure(space, std::move(w));
}

double renormalize_rows(Matrix& m) {
  double drift = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double s = m.row(i).sum();
    drift = std::max(drift, std::abs(s - 1.0));
    if (s != 1.0 && s > 0.0) m.row(i) /= s;
  }
  return drift;
}

double tv_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  return 0.5 * (a - b).cwiseAbs().sum();
}

}  // namespace mclab
