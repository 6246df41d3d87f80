#pragma once

#include "mclab/sequence.hpp"
#include "mclab/state.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mclab {

/// Entries below this are a hard error in the singular-value bounds (never clamped).
inline constexpr double kPositivityFloor = 1e-300;

/// mu_0, ..., mu_n with mu_i = mu_{i-1} K_i, all strictly positive.
struct MeasureTrajectory {
  std::vector<ProbMeasure> mu;
};

/// Throws NonPositiveMeasureError if some mu_i has an entry below kPositivityFloor.
MeasureTrajectory measure_trajectory(const KernelSequence& seq, const ProbMeasure& mu0, std::int64_t n);

/// Second largest singular value of D(mu_prev)^{1/2} K D(mu_next)^{-1/2}, i.e. the norm of K
/// from l^2(mu_next) to l^2(mu_prev) on mean-zero functions.
///
/// Requires ||mu_prev K - mu_next||_inf <= 1e-10 (InconsistentMeasureError) and both measures
/// above the positivity floor (NonPositiveMeasureError). The top singular value is checked to be
/// 1 within 1e-10.
double step_sigma(const StochasticKernel& k, const ProbMeasure& mu_prev, const ProbMeasure& mu_next);

/// P(x, y) = mu_next(x)^{-1} sum_z K(z, x) K(z, y) mu_prev(z), i.e. K* K with K* the adjoint between
/// the two weighted spaces. Same preconditions as step_sigma.
StochasticKernel pi_kernel(const StochasticKernel& k, const ProbMeasure& mu_prev, const ProbMeasure& mu_next);

/// Second largest eigenvalue of a P kernel, from a general (non-symmetric) eigensolver.
double second_eigenvalue(const StochasticKernel& p);

struct SingularBoundReport {
  std::int64_t horizon = 0;
  /// sigma_1..sigma_n.
  std::vector<double> sigmas;
  /// prod_{i<=k} sigma_i for k = 0..n.
  std::vector<double> sigma_product;
  /// Per k: tv_bound[k](x) = mu_0(x)^{-1/2} prod sigma and tv_exact[k](x) = ||K_{0,k}(x,.) - mu_k||_TV.
  std::vector<Vector> tv_bound;
  std::vector<Vector> tv_exact;
  /// Per k: [mu_0(x) mu_k(y)]^{-1/2} prod sigma against |K_{0,k}(x,y)/mu_k(y) - 1|. Empty unless requested.
  std::vector<Matrix> relsup_bound;
  std::vector<Matrix> relsup_exact;
  /// Per k maxima over x (and y).
  std::vector<double> max_tv_bound, max_tv_exact, max_relsup_bound, max_relsup_exact;
  /// Per k smallest bound - exact (never a ratio).
  std::vector<double> min_tv_gap, min_relsup_gap;
  /// Entries where exact > bound + 1e-12.
  std::size_t violations = 0;

  /// Columns n, sigma_n, sigma_product, tv_bound, tv_exact, relsup_bound, relsup_exact (maxima per n).
  std::string csv() const;
};

SingularBoundReport thsing_bounds(const KernelSequence& seq, const ProbMeasure& mu0, std::int64_t n,
                                  bool keep_matrices = false);

/// Homogeneous chain K^n from mu_0.
struct HomogeneousBoundReport {
  /// Second singular value of K on l^2(pi) (second largest |eigenvalue| when reversible).
  double beta = 0.0;
  /// Per n: 2 ||mu_n - pi||_TV against ||mu_0/pi||_{l^2(pi)} beta^n.
  std::vector<double> quant_exact, quant_bound;
  /// Per n: max_{x,y} |K^n(x,y)/mu_n(y) - 1| against max of [mu_0(x) mu_n(y)]^{-1/2} prod sigma_i.
  std::vector<double> hom1_exact, hom1_bound;
  /// Per n: max_y |pi(y)/mu_n(y) - 1| against max_y [mu_0^* mu_n(y)]^{-1/2} prod sigma_i.
  std::vector<double> hom2_exact, hom2_bound;
  std::size_t violations = 0;
};

HomogeneousBoundReport homogeneous_bounds(const StochasticKernel& k, const ProbMeasure& mu0, std::int64_t n);

}  // namespace mclab
