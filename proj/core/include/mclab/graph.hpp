#pragma once

#include "mclab/state.hpp"

#include <cstddef>
#include <vector>

namespace mclab {

/// Undirected edge {x, y}; x == y is a loop.
struct Edge {
  std::size_t x = 0;
  std::size_t y = 0;
  double weight = 1.0;

  bool loop() const noexcept { return x == y; }
};

/// Finite undirected graph with loops and positive edge weights.
///
/// A loop counts once in the degree and once in the weight sum of its vertex.
/// Multi-edges are rejected. Connectivity is not enforced here (graph_kernel
/// checks it) so that intermediate constructions can be built freely.
class WeightedGraph {
 public:
  WeightedGraph(StateSpace space, std::vector<Edge> edges);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<double> weights() const;
  /// Same edges, new weights (one per edge, same order).
  WeightedGraph with_weights(const std::vector<double>& weights) const;
  /// Unit weights on the same edges.
  WeightedGraph unweighted() const;

  std::size_t degree(std::size_t x) const { return degree_.at(x); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t min_degree() const noexcept { return min_degree_; }
  /// Delta_N = sum_x d(x).
  std::size_t degree_sum() const noexcept { return degree_sum_; }
  /// delta(x) = d(x) / sum d.
  ProbMeasure degree_measure() const;

  /// sum_{e containing x} w_e.
  double weight_sum(std::size_t x) const { return weight_sum_.at(x); }
  /// c(w) = sum_x sum_{e containing x} w_e.
  double normalization() const noexcept { return normalization_; }
  /// R(w) = max w_e / min w_e.
  double weight_ratio() const noexcept { return weight_ratio_; }

  bool connected() const;
  bool has_loop(std::size_t x) const { return loop_index_.at(x) != kNoEdge; }
  bool has_all_loops() const;
  /// Index into edges() of the loop at x.
  std::size_t loop_index(std::size_t x) const { return loop_index_.at(x); }

  static constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

 private:
  StateSpace space_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
  std::vector<double> weight_sum_;
  std::vector<std::size_t> loop_index_;
  std::size_t max_degree_ = 0;
  std::size_t min_degree_ = 0;
  std::size_t degree_sum_ = 0;
  double normalization_ = 0.0;
  double weight_ratio_ = 1.0;
};

}  // namespace mclab
