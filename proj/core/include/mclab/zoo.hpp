#pragma once

#include "mclab/graph.hpp"
#include "mclab/sequence.hpp"
#include "mclab/state.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mclab {

class CounterRng;

// ---------------------------------------------------------------- birth and death chains

/// Constant-rate chain on {0..N}: K(x,x+1) = p, K(x,x-1) = q, K(x,x) = r inside,
/// with the missing move folded into holding at the ends: K(0,0) = q+r, K(N,N) = p+r.
StochasticKernel constant_rate_bd(std::size_t N, double p, double q, double r);

struct BirthDeathSpec {
  BirthDeathSpec(StochasticKernel k, ProbMeasure p) : kernel(std::move(k)), pi(std::move(p)) {}

  std::size_t N = 0;
  /// Per-site rates; up[N] = down[0] = 0 and hold = 1 - up - down.
  std::vector<double> up, down, hold;
  StochasticKernel kernel;
  ProbMeasure pi;
  double detailed_balance_residual = 0.0;
  /// Every K(x, x+e), e in {-1, 0, 1}, lies in [1/4, 3/4].
  bool rates_in_band = false;
  /// 1/4 <= (N+1) pi(x) <= 4 for all x.
  bool measure_in_band = false;

  bool pb0_class() const noexcept { return rates_in_band && measure_in_band; }
};

/// Birth and death chain from per-site rates (vectors of length N+1, up[N] and down[0] must be 0).
/// The reversible measure comes from the product formula pi(x+1)/pi(x) = up[x]/down[x+1].
BirthDeathSpec general_bd(std::vector<double> up, std::vector<double> down);

/// A random chain of the class with rates in [1/4, 3/4] and (N+1) pi in [1/4, 4]:
/// log pi is a bounded random walk, conductances are drawn around sqrt(pi(x) pi(x+1)),
/// and the result is rejected until both band checks pass.
BirthDeathSpec sample_pb0_chain(std::size_t N, CounterRng& rng);

/// Rates (p, q, r) of a random constant-rate chain with p/q uniform in [a, A] and r uniform in [0, r_max].
struct ConstantRates {
  double p, q, r;
};
ConstantRates sample_constant_rates(double a, double A, double r_max, CounterRng& rng);

/// K_i is a fresh constant-rate chain with p/q in [a, A], drawn from substream (seed, i).
KernelSequence random_constant_rate_sequence(std::size_t N, double a, double A, std::uint64_t seed, double r_max = 1.0 / 3.0);
/// K_i is a fresh chain from sample_pb0_chain, drawn from substream (seed, i).
KernelSequence random_pb0_sequence(std::size_t N, std::uint64_t seed);

/// Alternating constant-rate pair Q1 = (p, q, r), Q2 = (q, p, r): K_1 = Q1, K_2 = Q2, ...
KernelSequence mirrored_pair_sequence(std::size_t N, double p, double q, double r);

// ---------------------------------------------------------------- perturbed stick pair

struct StickPair {
  StochasticKernel q1, q2;
  /// Reversible measures from the closed formulas.
  ProbMeasure pi1, pi2;
};

/// The pair on {0..N}, N = 2n+1 odd. Q1 moves 2x -> 2x+1 and 2x+1 -> 2x with probability p,
/// 2x -> 2x-1 and 2x-1 -> 2x with probability q, holds with r inside, and has
/// Q1(0,0) = q+r, Q1(N,N) = eta1, Q1(N,N-1) = 1-eta1. Q2 swaps p and q and uses eta2.
StickPair perturbed_stick_pair(std::size_t N, double p, double q, double r, double eta1, double eta2);

/// x_0 = N, x_1 = N-2, ..., x_n = 1, x_{n+1} = 0, x_{n+2} = 2, ..., x_N = N-1.
std::vector<std::size_t> stick_relabeling(std::size_t N);

/// Invariant measure of Q1 Q2 for r = 0 and p + q = 1, p != q:
/// pi(x_0) = 1 and pi(x_i) = alpha + beta (p/q)^{2i}, normalized.
/// All terms are scaled by max(1, (p/q)^{2N}) and summed with compensation.
ProbMeasure closed_form_invariant(std::size_t N, double p, double q, double eta1, double eta2);

// ---------------------------------------------------------------- small examples

/// Q0 = [[0,1],[1-a,a]], Q1 = [[b,1-b],[1,0]].
KernelSet two_point(double a, double b);
/// Simple random walks on the two unit-weight five-vertex graphs (labels "1".."5").
KernelSet five_point();
/// Simple random walks on the two unit-weight seven-vertex graphs (labels "1".."7").
KernelSet seven_point();
/// (Q0, Q0*) with Q0* the adjoint on l^2(pi_0).
KernelSet adjoint_pair(const StochasticKernel& q0);
/// Cyclic rotation x -> x+1 that holds at x with probability hold[x] (the rest moves on).
StochasticKernel rotation_with_holding(const std::vector<double>& hold);

/// Names accepted by small_example: two_point, five_point, seven_point, adjoint_pair.
/// two_point reads params "a" and "b"; adjoint_pair uses rotation_with_holding({0, 0, 0.5}).
KernelSet small_example(const std::string& name, const std::map<std::string, double>& params = {});

// ---------------------------------------------------------------- weighted graphs

struct GraphKernel {
  StochasticKernel kernel;
  ProbMeasure pi;
};

/// K(w)(x,y) = w_{xy} / sum_{e containing x} w_e and pi(w)(x) = c(w)^{-1} sum_{e containing x} w_e.
/// Throws InvalidArgument for a disconnected graph.
GraphKernel graph_kernel(const WeightedGraph& g);

struct MetropolisResult {
  explicit MetropolisResult(WeightedGraph g) : graph(std::move(g)) {}

  WeightedGraph graph;
  /// max_x max(pi/delta, delta/pi) for the target.
  double a = 1.0;
  /// R(v) of the input weights.
  double b = 1.0;
  std::size_t max_degree = 0;
  /// a^2 (b^3 + b D).
  double ratio_bound = 0.0;
  /// max_x |pi(w)(x) - target(x)|.
  double residual = 0.0;
};

/// w_{xy} = v_{xy} min(pi(x)/pi(v)(x), pi(y)/pi(v)(y)) off the diagonal and loop weights
/// w_x = c(v) pi(x) - sum_{y != x} w_{xy}, so that pi(w) = pi. Requires a loop at every vertex.
MetropolisResult metropolis_reweight(const WeightedGraph& g, const ProbMeasure& pi_target);

/// Independent log-uniform weights on [1, b]. Throws InvalidArgument for b < 1.
WeightedGraph random_weights(const WeightedGraph& g, double b, std::uint64_t seed);

/// Path 0 - 1 - ... - N with a loop at every vertex, unit weights.
WeightedGraph lazy_stick(std::size_t N);
/// Uniform simple d-regular graph on n vertices (pairing model with rejection of loops,
/// multi-edges and disconnected outcomes), optionally with a loop added at every vertex.
WeightedGraph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed, bool loops = false);
/// All pairs plus a loop at every vertex.
WeightedGraph complete_graph_with_loops(std::size_t n);
/// The graphs behind five_point() and seven_point(); index 0 or 1.
WeightedGraph five_point_graph(int which);
WeightedGraph seven_point_graph(int which);

// ---------------------------------------------------------------- catalog

struct ZooEntry {
  std::string name;
  std::string description;
  /// Parameter names with defaults.
  std::map<std::string, double> defaults;
};

const std::vector<ZooEntry>& zoo_catalog();

/// JSON document for catalog entry `name` (kernel, kernel set with a cyclic word, or graph).
/// Unknown parameters raise ConfigError.
std::string zoo_emit(const std::string& name, const std::map<std::string, double>& params, std::uint64_t seed);

}  // namespace mclab
