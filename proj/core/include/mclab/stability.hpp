#pragma once

#include "mclab/sequence.hpp"
#include "mclab/state.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mclab {

/// A word over a kernel set: letter i means kernels[i]; the product is applied left to right.
using Word = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultBudgetNodes = std::size_t{1} << 20;

/// All words of length 0..depth over an alphabet of `letters` symbols, in lexicographic
/// (depth-first preorder) order: "", 0, 00, ..., 01, ..., 1, 10, ...
class WordEnumeration {
 public:
  WordEnumeration(std::size_t letters, std::size_t depth);

  std::size_t letters() const noexcept { return letters_; }
  std::size_t depth() const noexcept { return depth_; }
  /// Number of tree nodes, sum_{d<=depth} letters^d, saturating at SIZE_MAX.
  std::size_t node_count() const noexcept;

  /// Advances `w` to the next word in preorder; returns false after the last one.
  /// Start from an empty word to visit the root first.
  bool next(Word& w) const;

  /// Throws BudgetExceededError when node_count() > budget.
  void check_budget(std::size_t budget) const;

 private:
  std::size_t letters_;
  std::size_t depth_;
};

struct EnvelopeOptions {
  std::size_t budget_nodes = kDefaultBudgetNodes;
  /// Top-level branches are split across this many threads; the result does not depend on it.
  unsigned threads = 1;
};

struct StabilityReport {
  StabilityReport(ProbMeasure pi, ProbMeasure start) : candidate_pi(std::move(pi)), mu0(std::move(start)) {}

  ProbMeasure candidate_pi;
  ProbMeasure mu0;
  std::size_t depth = 0;
  /// max over words |w| <= depth and states of max(mu_w(x)/pi(x), pi(x)/mu_w(x)).
  double c_estimate = 1.0;
  /// First word in preorder attaining c_estimate, and the state where it is attained.
  Word witness_word;
  std::size_t witness_state = 0;
  /// c_by_depth[d] is the envelope over words of length <= d.
  std::vector<double> c_by_depth;
  std::size_t nodes_visited = 0;
  /// Random words rather than the whole tree: c_estimate is then only a lower bound.
  bool sampled = false;
  /// Set by product_invariant_criterion when run alongside the envelope.
  std::optional<bool> criterion_pass;

  std::string json() const;
  /// Columns depth, c_estimate.
  std::string csv() const;
};

/// Exact envelope of mu_0 K_{w_1} ... K_{w_k} / pi over the word tree, computed in log space.
/// mu0 and pi must be strictly positive. Throws BudgetExceededError when the tree is too large.
StabilityReport ratio_envelope(const KernelSet& q_set, const ProbMeasure& mu0, const ProbMeasure& pi, std::size_t depth,
                               const EnvelopeOptions& options = {});

/// Lower bound on the envelope from `samples` uniformly random words of length `depth`
/// (every prefix is evaluated).
StabilityReport sampled_ratio_envelope(const KernelSet& q_set, const ProbMeasure& mu0, const ProbMeasure& pi,
                                       std::size_t depth, std::size_t samples, std::uint64_t seed);

struct CriterionResult {
  bool pass = true;
  std::size_t words_checked = 0;
  /// First word (preorder) whose product is not SIA or whose invariant measure leaves the band.
  std::optional<Word> witness;
  std::string reason;
  /// max over SIA products of max(pi_P/pi, pi/pi_P); +inf when some pi_P vanishes somewhere.
  double worst_ratio = 1.0;
};

/// Checks every product P_w, 1 <= |w| <= depth: P_w is SIA and c^{-1} pi <= pi_{P_w} <= c pi.
CriterionResult product_invariant_criterion(const KernelSet& q_set, const ProbMeasure& pi, std::size_t depth, double c,
                                            std::size_t budget_nodes = kDefaultBudgetNodes);

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t max_sweeps = 60;
  double initial_step = 0.5;
  double min_step = 1e-4;
  EnvelopeOptions envelope;
};

struct StableMeasureResult {
  explicit StableMeasureResult(ProbMeasure start) : mu0(std::move(start)) {}

  ProbMeasure mu0;
  /// Envelope constant of mu0 (re-evaluated, never smaller than the true envelope at this depth).
  double c = 1.0;
  /// "pi", "uniform" or "barycenter": the start the best point descends from.
  std::string start;
  std::size_t evaluations = 0;
};

/// Heuristic local search for a starting measure minimizing the envelope against pi.
/// Deterministic given options.seed. A poor result is evidence of instability, not a proof.
StableMeasureResult search_stable_measure(const KernelSet& q_set, const ProbMeasure& pi, std::size_t depth,
                                          const SearchOptions& options = {});

struct TwoPointClassification {
  bool stable = true;
  /// Indices (i, j) with Q_i(0,0) = 0, Q_j(1,1) = 0 and Q_i != Q_j.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Throws DimensionError unless every kernel is 2x2.
TwoPointClassification two_point_classify(const KernelSet& q_set);

struct LimitRowEstimate {
  explicit LimitRowEstimate(ProbMeasure r) : row(std::move(r)) {}

  /// Row average of K_{m_min,n}.
  ProbMeasure row;
  /// max row-pair TV distance of K_{m_min,n}; small means the rows have merged.
  double diag = 1.0;
  /// spread[j] is the row spread of K_{n-1-j,n}, i.e. m = n-1, n-2, ..., m_min.
  std::vector<double> spread;
  /// Spread non-increasing as m decreases (slack 1e-12).
  bool monotone = true;
  /// An explicit list was reused cyclically for indices <= 0.
  bool reused_explicit_list = false;
};

/// Backward extension K_{m,n} = K_{m+1} ... K_n for m = n-1 down to m_min.
LimitRowEstimate limit_row_estimate(const KernelSequence& seq, std::int64_t n, std::int64_t m_min);

}  // namespace mclab
