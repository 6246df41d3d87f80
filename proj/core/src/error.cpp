#include "mclab/error.hpp"

#include <sstream>

namespace mclab {

namespace {

std::string describe_classes(const std::vector<std::vector<std::size_t>>& classes) {
  std::ostringstream out;
  out << "kernel has " << classes.size() << " recurrent classes:";
  for (const auto& c : classes) {
    out << " {";
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << "}";
  }
  return out.str();
}

}  // namespace

ReducibleKernelError::ReducibleKernelError(std::vector<std::vector<std::size_t>> classes)
    : Error(describe_classes(classes)), classes_(std::move(classes)) {}

NonPositiveMeasureError::NonPositiveMeasureError(std::string what, std::size_t state, double value)
    : Error(what + " (state " + std::to_string(state) + ", value " + std::to_string(value) + ")"),
      state_(state),
      value_(value) {}

InconsistentMeasureError::InconsistentMeasureError(std::string what, double residual)
    : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

BudgetExceededError::BudgetExceededError(std::size_t required, std::size_t budget)
    : Error("word tree has " + std::to_string(required) + " nodes, budget is " + std::to_string(budget) +
            "; raise --budget-nodes or use the sampled envelope"),
      required_(required),
      budget_(budget) {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field + ": " + message), field_(std::move(field)) {}

}  // namespace mclab
