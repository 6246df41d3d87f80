#pragma once

#include "mclab/sequence.hpp"
#include "mclab/state.hpp"

#include <cstdint>
#include <vector>

namespace mclab {

/// K1 K2 (x, y) = sum_z K1(x, z) K2(z, y). Throws DimensionError on a space mismatch.
StochasticKernel compose(const StochasticKernel& a, const StochasticKernel& b);

enum class ProductOrder { forward, backward };

/// forward: K_{m+1} ... K_n; backward: K_n ... K_{m+1}; identity when m == n.
/// Computed as a left fold of compose(). Throws InvalidArgument unless 0 <= m <= n.
StochasticKernel product(const KernelSequence& seq, std::int64_t m, std::int64_t n,
                         ProductOrder order = ProductOrder::forward);

/// mu_0, mu_1 = mu_0 K_1, ..., mu_n by repeated vector-matrix products.
std::vector<ProbMeasure> evolve(const ProbMeasure& mu0, const KernelSequence& seq, std::int64_t n);

/// mu K for one kernel.
ProbMeasure push_forward(const ProbMeasure& mu, const StochasticKernel& k);

struct StructureReport {
  bool irreducible = false;
  bool aperiodic = false;
  /// Exactly one recurrent class, aperiodic on it.
  bool sia = false;
  /// Closed strongly connected components of the positive-entry digraph, each sorted, ordered by smallest state.
  std::vector<std::vector<std::size_t>> recurrent_classes;
  /// Period of each recurrent class (same order).
  std::vector<std::size_t> class_periods;
  /// Period of the unique recurrent class; lcm of class periods otherwise.
  std::size_t period = 1;
};

StructureReport classify_structure(const StochasticKernel& k);

/// Unique invariant measure, zero on transient states.
///
/// Solved by GTH elimination on the recurrent class (subtraction-free, entrywise
/// accurate even when pi spans many orders of magnitude). If the residual
/// ||pi K - pi||_inf exceeds 1e-12 the result is polished by power iteration.
/// Throws ReducibleKernelError when there are two or more recurrent classes.
ProbMeasure stationary_measure(const StochasticKernel& k);

/// ||mu K - mu||_inf.
double invariance_residual(const ProbMeasure& mu, const StochasticKernel& k);

struct AdjointResult {
  /// K*(x, y) = pi(y) K(y, x) / pi(x).
  Matrix matrix;
  /// pi K = pi within 1e-10; when false `matrix` need not be stochastic.
  bool pi_invariant = false;
  double invariance_residual = 0.0;

  /// The adjoint as a kernel. Throws InconsistentMeasureError when !pi_invariant.
  StochasticKernel kernel(const StateSpace& space) const;
};

/// Adjoint of K on l^2(pi). Throws NonPositiveMeasureError for a zero entry in pi.
AdjointResult adjoint(const StochasticKernel& k, const ProbMeasure& pi);
/// Shorthand for adjoint(k, pi).kernel(k.space()).
StochasticKernel adjoint_kernel(const StochasticKernel& k, const ProbMeasure& pi);

/// Dobrushin coefficient: max over row pairs of the total variation distance.
double contraction_coefficient(const StochasticKernel& k);
double contraction_coefficient(const Matrix& m);

/// max_x |pi(x) K(x,y) - pi(y) K(y,x)|.
double detailed_balance_residual(const StochasticKernel& k, const ProbMeasure& pi);

}  // namespace mclab
