#pragma once

#include "mclab/sequence.hpp"
#include "mclab/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mclab {

enum class Metric { tv, relsup };

const char* to_string(Metric m) noexcept;
/// "tv" or "relsup"; throws InvalidArgument otherwise.
Metric parse_metric(const std::string& name);

/// max over row pairs of TV(P(x,.), P(x',.)). Equals the supremum over all pairs of starting measures.
double tv_pairwise(const Matrix& p);

/// max_y max_x P(x,y) / min_x P(x,y) - 1, the supremum over positive starting pairs of ||mu'/mu - 1||_inf.
/// An all-zero column contributes 0; a column mixing zero and positive entries gives +inf.
double relsup_pairwise(const Matrix& p);
/// Same, with the zero pattern read from `support` (nonzero = positive entry) instead of from p.
/// Use when entries of p may have underflowed to 0.
double relsup_pairwise(const Matrix& p, const Matrix& support);

struct PairwiseDistances {
  double tv = 0.0;
  double relsup = 0.0;
};

PairwiseDistances pairwise_distances(const Matrix& p);
/// Distances of the forward product K_{0,n}.
PairwiseDistances pairwise_distances(const KernelSequence& seq, std::int64_t n);

struct DoeblinCertificate {
  /// eps_i = max_y min_x K_i(x, y), i = 1..n.
  std::vector<double> epsilons;
  /// prod_{i<=k} (1 - eps_i) for k = 0..n; entry 0 is 1.
  std::vector<double> cumulative_bound;
  double epsilon_sum = 0.0;
  /// epsilon_sum exceeded the threshold: evidence for sum eps_i = infinity.
  bool diverges = false;
};

DoeblinCertificate doeblin_bound(const KernelSequence& seq, std::int64_t n, double divergence_threshold = 10.0);
double doeblin_epsilon(const StochasticKernel& k);

/// Product of Dobrushin coefficients of the complete blocks K_{jb,(j+1)b} inside [0, n].
double block_contraction_bound(const KernelSequence& seq, std::int64_t n, std::int64_t block);
/// The same bound for every k = 0..n (value at k uses the complete blocks inside [0, k]).
std::vector<double> block_contraction_trajectory(const KernelSequence& seq, std::int64_t n, std::int64_t block);

struct MergingOptions {
  /// Stop at the merging time of the requested metric instead of running to n_max.
  bool stop_when_reached = false;
  /// Also record the Doeblin and block-contraction trajectories.
  bool with_bounds = true;
  std::int64_t block = 1;
};

struct MergingReport {
  std::int64_t horizon = 0;
  double epsilon = 0.0;
  Metric metric = Metric::tv;
  /// Entry n is the distance of K_{0,n}, n = 0..horizon.
  std::vector<double> tv_trajectory;
  std::vector<double> relsup_trajectory;
  std::optional<std::int64_t> tv_time;
  std::optional<std::int64_t> relsup_time;
  /// Empty when bounds were not requested.
  std::vector<double> doeblin_trajectory;
  std::vector<double> block_trajectory;
  /// Largest |row sum - 1| removed by renormalization over the run.
  double max_drift = 0.0;

  /// Merging time for `metric`; nullopt means "not reached".
  std::optional<std::int64_t> time() const { return metric == Metric::tv ? tv_time : relsup_time; }

  /// Columns n, tv, relsup, doeblin_bound, block_bound.
  std::string csv() const;
  std::string json() const;
  /// Blocks "tv", "relsup" (and bounds when present) of (n, value) rows.
  std::string plotdata() const;
};

/// Exact pairwise distances of K_{0,n} for n = 0..n_max, products accumulated incrementally.
/// tv requires epsilon in (0, 1); relsup requires epsilon > 0.
MergingReport merging_time(const KernelSequence& seq, double epsilon, Metric metric, std::int64_t n_max,
                           const MergingOptions& options = {});

struct UniformConditionsCertificate {
  std::int64_t ell = 0;
  double epsilon = 0.0;
  double eta = 0.0;
  /// Support pattern of each kernel.
  std::vector<Eigen::MatrixXi> adjacency_witnesses;
  bool satisfied = false;
};

/// Uses each kernel's own support as A_i and looks for the smallest ell <= ell_max with every A_i^ell positive.
UniformConditionsCertificate uniform_conditions_certificate(const KernelSet& kernels, std::int64_t ell_max);

struct BackwardEnvelopes {
  /// lower[k](y) = min_x K_k...K_1(x, y), upper[k](y) = max_x of the same, k = 0..n.
  std::vector<Vector> lower;
  std::vector<Vector> upper;
  /// upper non-increasing and lower non-decreasing in k (slack 1e-12).
  bool monotone = true;
};

BackwardEnvelopes backward_envelopes(const KernelSequence& seq, std::int64_t n);

}  // namespace mclab
