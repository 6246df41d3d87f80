#pragma once

#include "mclab/graph.hpp"
#include "mclab/state.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mclab {

struct SpectralReport {
  /// Second largest absolute eigenvalue, max(beta_1, -beta_minus).
  double sigma = 0.0;
  double gap = 1.0;
  /// Second largest and smallest eigenvalue.
  double beta_1 = 0.0;
  double beta_minus = 0.0;
  /// Delta_N = sum_x d(x) and d_* = min_x d(x).
  std::size_t degree_sum = 0;
  std::size_t min_degree = 0;
  /// All eigenvalues, descending.
  Vector eigenvalues;

  std::string json() const;
};

/// Spectrum of the simple random walk K(1) at delta (the graph's weights are ignored).
SpectralReport srw_spectrum(const WeightedGraph& g);
/// Spectrum of K(w) at pi(w) for the graph's own weights.
SpectralReport weighted_spectrum(const WeightedGraph& g);
/// Eigenvalues of a reversible pair (K, pi), via the symmetric conjugation D^{1/2} K D^{-1/2}.
SpectralReport reversible_spectrum(const StochasticKernel& k, const ProbMeasure& pi);

struct DirichletForms {
  /// (1/c) sum over non-loop edges of w_e (f(x) - f(y))^2.
  double energy = 0.0;
  /// (1/2c) sum over ordered (x, y) with {x,y} an edge of w (f(x) + f(y))^2; a loop contributes 4 f(x)^2 w once.
  double dual_energy = 0.0;
  /// Variance of f under pi(w).
  double variance = 0.0;
};

DirichletForms dirichlet_forms(const WeightedGraph& g, const Vector& f);

/// Var_mu(f).
double variance(const ProbMeasure& mu, const Vector& f);

struct ComparisonOptions {
  /// Horizon of the trajectory; 0 means 10 |V|^2.
  std::int64_t n_max = 0;
  /// Number of grid intervals used to certify domination between grid points.
  std::int64_t grid_points = 200;
};

struct ComparisonReport {
  double b = 1.0;
  double weight_ratio = 1.0;
  double sigma_srw = 0.0;
  double sigma_w = 0.0;
  /// b^{-2} (1 - sigma_N) against 1 - sigma(w).
  double gap_lower = 0.0;
  double gap_w = 0.0;
  bool gap_holds = true;
  std::int64_t n_max = 0;
  /// Evaluated points: n, b d_*^{-1} Delta_N (1 - b^{-2}(1 - sigma_N))^n and max_{x,y} |K(w)^n(x,y)/pi(w)(y) - 1|.
  std::vector<std::int64_t> n;
  std::vector<double> bound;
  std::vector<double> exact_max;
  /// Points where exact > bound + 1e-12.
  std::size_t violations = 0;
  /// Every n in [0, n_max] is covered: the exact deviation is non-increasing in n and the
  /// bound is decreasing, so exact(n_k) <= bound(n_{k+1}) settles the whole interval; intervals
  /// where that fails are evaluated step by step.
  bool certified = false;

  /// Columns n, bound, exact_max.
  std::string csv() const;
};

/// Throws InvalidArgument when R(w) > b.
ComparisonReport comparison_check(const WeightedGraph& g, double b, const ComparisonOptions& options = {});

}  // namespace mclab
