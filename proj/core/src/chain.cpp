#include "mclab/chain.hpp"

#include "mclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace mclab {

namespace {

void require_same_space(const StateSpace& a, const StateSpace& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": state spaces differ (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + " states)");
  }
}

// Tarjan's algorithm, iterative. Returns component id per vertex.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& adj, std::size_t& count) {
  const std::size_t n = adj.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  count = 0;
  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<Frame> calls{{root, 0}};
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& f = calls.back();
      if (f.edge < adj[f.v].size()) {
        const std::size_t w = adj[f.v][f.edge++];
        if (index[w] == unset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
    }
  }
  return comp;
}

// gcd of (level(u) + 1 - level(v)) over edges inside the class, BFS levels from its first state.
std::size_t class_period(const std::vector<std::vector<std::size_t>>& adj, const std::vector<std::size_t>& members,
                         const std::vector<std::size_t>& comp, std::size_t id) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(adj.size(), unset);
  std::queue<std::size_t> frontier;
  level[members.front()] = 0;
  frontier.push(members.front());
  std::size_t g = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adj[u]) {
      if (comp[v] != id) continue;
      if (level[v] == unset) {
        level[v] = level[u] + 1;
        frontier.push(v);
      } else {
        const auto diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
        g = std::gcd(g, static_cast<std::size_t>(std::llabs(diff)));
      }
    }
  }
  return g == 0 ? 1 : g;
}

// GTH elimination for an irreducible stochastic matrix.
Vector gth_stationary(Matrix a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = n - 1; k > 0; --k) {
    const double s = a.row(k).head(k).sum();
    a.col(k).head(k) /= s;
    a.topLeftCorner(k, k).noalias() += a.col(k).head(k) * a.row(k).head(k);
  }
  Vector pi(n);
  pi(0) = 1.0;
  for (Eigen::Index k = 1; k < n; ++k) pi(k) = pi.head(k).dot(a.col(k).head(k));
  return pi / pi.sum();
}

}  // namespace

StochasticKernel compose(const StochasticKernel& a, const StochasticKernel& b) {
  require_same_space(a.space(), b.space(), "compose");
  Matrix m = a.matrix() * b.matrix();
  return StochasticKernel(a.space(), std::move(m));
}

StochasticKernel product(const KernelSequence& seq, std::int64_t m, std::int64_t n, ProductOrder order) {
  if (m < 0 || m > n) throw InvalidArgument("product: need 0 <= m <= n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  auto acc = StochasticKernel::identity(seq.space());
  for (std::int64_t i = m + 1; i <= n; ++i) {
    acc = order == ProductOrder::forward ? compose(acc, seq.kernel(i)) : compose(seq.kernel(i), acc);
  }
  return acc;
}

ProbMeasure push_forward(const ProbMeasure& mu, const StochasticKernel& k) {
  require_same_space(mu.space(), k.space(), "push_forward");
  Vector next = k.matrix().transpose() * mu.weights();
  return ProbMeasure(mu.space(), std::move(next));
}

std::vector<ProbMeasure> evolve(const ProbMeasure& mu0, const KernelSequence& seq, std::int64_t n) {
  if (n < 0) throw InvalidArgument("evolve: n must be non-negative");
  require_same_space(mu0.space(), seq.space(), "evolve");
  std::vector<ProbMeasure> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(mu0);
  for (std::int64_t i = 1; i <= n; ++i) out.push_back(push_forward(out.back(), seq.kernel(i)));
  return out;
}

StructureReport classify_structure(const StochasticKernel& k) {
  const std::size_t n = k.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (k(x, y) > 0.0) adj[x].push_back(y);
    }
  }
  std::size_t ncomp = 0;
  const auto comp = strongly_connected(adj, ncomp);

  std::vector<bool> closed(ncomp, true);
  std::vector<std::vector<std::size_t>> members(ncomp);
  for (std::size_t x = 0; x < n; ++x) {
    members[comp[x]].push_back(x);
    for (std::size_t y : adj[x]) {
      if (comp[y] != comp[x]) closed[comp[x]] = false;
    }
  }

  StructureReport report;
  std::vector<std::size_t> ids;
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (closed[c]) ids.push_back(c);
  }
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return members[a].front() < members[b].front(); });
  std::size_t lcm = 1;
  for (std::size_t c : ids) {
    report.recurrent_classes.push_back(members[c]);
    const std::size_t p = class_period(adj, members[c], comp, c);
    report.class_periods.push_back(p);
    lcm = std::lcm(lcm, p);
  }
  report.period = lcm;
  report.irreducible = ncomp == 1;
  report.aperiodic = std::all_of(report.class_periods.begin(), report.class_periods.end(), [](std::size_t p) { return p == 1; });
  report.sia = report.recurrent_classes.size() == 1 && report.aperiodic;
  return report;
}

double invariance_residual(const ProbMeasure& mu, const StochasticKernel& k) {
  require_same_space(mu.space(), k.space(), "invariance_residual");
  return (k.matrix().transpose() * mu.weights() - mu.weights()).cwiseAbs().maxCoeff();
}

ProbMeasure stationary_measure(const StochasticKernel& k) {
  const auto structure = classify_structure(k);
  if (structure.recurrent_classes.size() != 1) throw ReducibleKernelError(structure.recurrent_classes);

  const auto& cls = structure.recurrent_classes.front();
  const auto m = static_cast<Eigen::Index>(cls.size());
  Matrix sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = k(cls[static_cast<std::size_t>(i)], cls[static_cast<std::size_t>(j)]);
  }
  const Vector pi_sub = m == 1 ? Vector::Ones(1) : gth_stationary(std::move(sub));

  Vector pi = Vector::Zero(static_cast<Eigen::Index>(k.size()));
  for (Eigen::Index i = 0; i < m; ++i) pi(static_cast<Eigen::Index>(cls[static_cast<std::size_t>(i)])) = pi_sub(i);
  ProbMeasure result(k.space(), pi);

  if (invariance_residual(result, k) > 1e-12) {
    // Power-iteration polish; converges when the recurrent class is aperiodic.
    Vector v = result.weights();
    for (int it = 0; it < 10000; ++it) {
      Vector next = k.matrix().transpose() * v;
      next /= next.sum();
      const double change = (next - v).cwiseAbs().maxCoeff();
      v = std::move(next);
      if (change < 1e-15) break;
    }
    ProbMeasure polished(k.space(), v);
    if (invariance_residual(polished, k) < invariance_residual(result, k)) result = std::move(polished);
  }
  return result;
}

StochasticKernel AdjointResult::kernel(const StateSpace& space) const {
  if (!pi_invariant) throw InconsistentMeasureError("adjoint: pi is not invariant for K", invariance_residual);
  return StochasticKernel(space, matrix);
}

AdjointResult adjoint(const StochasticKernel& k, const ProbMeasure& pi) {
  require_same_space(k.space(), pi.space(), "adjoint");
  for (std::size_t x = 0; x < pi.size(); ++x) {
    if (!(pi[x] > 0.0)) throw NonPositiveMeasureError("adjoint: pi must be strictly positive", x, pi[x]);
  }
  const Vector& w = pi.weights();
  AdjointResult out;
  out.matrix = w.cwiseInverse().asDiagonal() * k.matrix().transpose() * w.asDiagonal();
  out.invariance_residual = invariance_residual(pi, k);
  out.pi_invariant = out.invariance_residual <= 1e-10;
  return out;
}

StochasticKernel adjoint_kernel(const StochasticKernel& k, const ProbMeasure& pi) { return adjoint(k, pi).kernel(k.space()); }

double contraction_coefficient(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index x = 0; x < m.rows(); ++x) {
    for (Eigen::Index y = x + 1; y < m.rows(); ++y) {
      best = std::max(best, 0.5 * (m.row(x) - m.row(y)).cwiseAbs().sum());
    }
  }
  return std::min(best, 1.0);
}

double contraction_coefficient(const StochasticKernel& k) { return contraction_coefficient(k.matrix()); }

double detailed_balance_residual(const StochasticKernel& k, const ProbMeasure& pi) {
  require_same_space(k.space(), pi.space(), "detailed_balance_residual");
  const Matrix flow = pi.weights().asDiagonal() * k.matrix();
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace mclab
