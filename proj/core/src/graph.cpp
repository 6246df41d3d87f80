#include "mclab/graph.hpp"

#include "mclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace mclab {

WeightedGraph::WeightedGraph(StateSpace space, std::vector<Edge> edges)
    : space_(std::move(space)), edges_(std::move(edges)) {
  const std::size_t n = space_.size();
  degree_.assign(n, 0);
  weight_sum_.assign(n, 0.0);
  loop_index_.assign(n, kNoEdge);
  if (edges_.empty()) throw InvalidArgument("graph: no edges");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  double wmin = edges_.front().weight;
  double wmax = wmin;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.x >= n || e.y >= n) throw InvalidArgument("graph: edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw InvalidArgument("graph: edge weights must be positive and finite");
    if (e.x > e.y) std::swap(e.x, e.y);
    if (!seen.emplace(e.x, e.y).second) {
      throw InvalidArgument("graph: duplicate edge {" + std::to_string(e.x) + "," + std::to_string(e.y) + "}");
    }
    ++degree_[e.x];
    weight_sum_[e.x] += e.weight;
    if (e.loop()) {
      loop_index_[e.x] = i;
    } else {
      ++degree_[e.y];
      weight_sum_[e.y] += e.weight;
    }
    wmin = std::min(wmin, e.weight);
    wmax = std::max(wmax, e.weight);
  }
  max_degree_ = *std::max_element(degree_.begin(), degree_.end());
  min_degree_ = *std::min_element(degree_.begin(), degree_.end());
  for (auto d : degree_) degree_sum_ += d;
  for (double s : weight_sum_) normalization_ += s;
  weight_ratio_ = wmax / wmin;
}

std::vector<double> WeightedGraph::weights() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  return w;
}

WeightedGraph WeightedGraph::with_weights(const std::vector<double>& weights) const {
  if (weights.size() != edges_.size()) throw DimensionError("graph: need one weight per edge");
  auto edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].weight = weights[i];
  return WeightedGraph(space_, std::move(edges));
}

WeightedGraph WeightedGraph::unweighted() const { return with_weights(std::vector<double>(edges_.size(), 1.0)); }

ProbMeasure WeightedGraph::degree_measure() const {
  Vector d(static_cast<Eigen::Index>(size()));
  for (std::size_t x = 0; x < size(); ++x) d(static_cast<Eigen::Index>(x)) = static_cast<double>(degree_[x]);
  return ProbMeasure(space_, d / static_cast<double>(degree_sum_));
}

bool WeightedGraph::connected() const {
  const std::size_t n = size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges_) {
    if (e.loop()) continue;
    adj[e.x].push_back(e.y);
    adj[e.y].push_back(e.x);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

bool WeightedGraph::has_all_loops() const {
  return std::none_of(loop_index_.begin(), loop_index_.end(), [](std::size_t i) { return i == kNoEdge; });
}

}  // namespace mclab
