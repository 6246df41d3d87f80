#include "mclab/spectral.hpp"

#include "format.hpp"
#include "mclab/error.hpp"
#include "mclab/zoo.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mclab {

namespace {

constexpr double kSlack = 1e-12;

Matrix matrix_power(Matrix base, std::int64_t e) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) {
      result = result * base;
      renormalize_rows(result);
    }
    e >>= 1;
    if (e > 0) {
      base = base * base;
      renormalize_rows(base);
    }
  }
  return result;
}

double max_relative_deviation(const Matrix& p, const Vector& inv_pi) {
  return ((p * inv_pi.asDiagonal()).array() - 1.0).abs().maxCoeff();
}

}  // namespace

SpectralReport reversible_spectrum(const StochasticKernel& k, const ProbMeasure& pi) {
  const Vector s = pi.weights().cwiseSqrt();
  Matrix sym = s.asDiagonal() * k.matrix() * s.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  SpectralReport r;
  r.eigenvalues = es.eigenvalues().reverse();
  if (r.eigenvalues.size() > 1) {
    r.beta_1 = r.eigenvalues(1);
    r.beta_minus = r.eigenvalues(r.eigenvalues.size() - 1);
    r.sigma = std::clamp(std::max(r.beta_1, -r.beta_minus), 0.0, 1.0);
  }
  r.gap = 1.0 - r.sigma;
  return r;
}

SpectralReport weighted_spectrum(const WeightedGraph& g) {
  const auto gk = graph_kernel(g);
  auto r = reversible_spectrum(gk.kernel, gk.pi);
  r.degree_sum = g.degree_sum();
  r.min_degree = g.min_degree();
  return r;
}

SpectralReport srw_spectrum(const WeightedGraph& g) { return weighted_spectrum(g.unweighted()); }

std::string SpectralReport::json() const {
  nlohmann::json j{{"sigma", sigma},       {"gap", gap},           {"beta_1", beta_1},
                   {"beta_minus", beta_minus}, {"Delta_N", degree_sum}, {"d_star", min_degree},
                   {"eigenvalues", std::vector<double>(eigenvalues.begin(), eigenvalues.end())}};
  return j.dump(2);
}

double variance(const ProbMeasure& mu, const Vector& f) {
  const double mean = mu.weights().dot(f);
  return std::max(0.0, mu.weights().dot(f.cwiseProduct(f)) - mean * mean);
}

DirichletForms dirichlet_forms(const WeightedGraph& g, const Vector& f) {
  if (f.size() != static_cast<Eigen::Index>(g.size())) throw DimensionError("dirichlet_forms: f must have one value per vertex");
  DirichletForms out;
  const double c = g.normalization();
  for (const auto& e : g.edges()) {
    const double fx = f(static_cast<Eigen::Index>(e.x));
    const double fy = f(static_cast<Eigen::Index>(e.y));
    if (e.loop()) {
      out.dual_energy += 4.0 * fx * fx * e.weight;
    } else {
      out.energy += (fx - fy) * (fx - fy) * e.weight;
      out.dual_energy += 2.0 * (fx + fy) * (fx + fy) * e.weight;
    }
  }
  out.energy /= c;
  out.dual_energy /= 2.0 * c;
  Vector pi(static_cast<Eigen::Index>(g.size()));
  for (std::size_t x = 0; x < g.size(); ++x) pi(static_cast<Eigen::Index>(x)) = g.weight_sum(x) / c;
  out.variance = variance(ProbMeasure(g.space(), pi), f);
  return out;
}

ComparisonReport comparison_check(const WeightedGraph& g, double b, const ComparisonOptions& options) {
  if (!(b >= 1.0)) throw InvalidArgument("comparison_check: b must be >= 1");
  if (g.weight_ratio() > b * (1.0 + kSlack)) {
    throw InvalidArgument("comparison_check: R(w) = " + detail::fmt(g.weight_ratio()) + " exceeds b = " + detail::fmt(b));
  }
  if (options.grid_points < 1) throw InvalidArgument("comparison_check: grid_points must be >= 1");
  ComparisonReport r;
  r.b = b;
  r.weight_ratio = g.weight_ratio();
  const auto srw = srw_spectrum(g);
  const auto gk = graph_kernel(g);
  const auto ws = reversible_spectrum(gk.kernel, gk.pi);
  r.sigma_srw = srw.sigma;
  r.sigma_w = ws.sigma;
  r.gap_lower = (1.0 - srw.sigma) / (b * b);
  r.gap_w = 1.0 - ws.sigma;
  r.gap_holds = r.gap_w >= r.gap_lower - kSlack;

  const auto size = static_cast<std::int64_t>(g.size());
  r.n_max = options.n_max > 0 ? options.n_max : 10 * size * size;
  const double prefactor = b * static_cast<double>(g.degree_sum()) / static_cast<double>(g.min_degree());
  const double rate = 1.0 - r.gap_lower;
  auto bound = [&](std::int64_t n) { return prefactor * std::pow(rate, static_cast<double>(n)); };
  const Vector inv_pi = gk.pi.weights().cwiseInverse();
  const Matrix& k = gk.kernel.matrix();

  auto record = [&](std::int64_t n, double exact) {
    r.n.push_back(n);
    r.bound.push_back(bound(n));
    r.exact_max.push_back(exact);
    if (exact > r.bound.back() + kSlack) ++r.violations;
  };

  const std::int64_t step = std::max<std::int64_t>(1, (r.n_max + options.grid_points - 1) / options.grid_points);
  const Matrix k_step = matrix_power(k, step);
  Matrix p = Matrix::Identity(k.rows(), k.cols());
  double exact = max_relative_deviation(p, inv_pi);
  record(0, exact);
  r.certified = true;
  for (std::int64_t lo = 0; lo < r.n_max;) {
    const std::int64_t hi = std::min(lo + step, r.n_max);
    Matrix next = hi - lo == step ? Matrix(p * k_step) : Matrix(p * matrix_power(k, hi - lo));
    renormalize_rows(next);
    const double exact_hi = max_relative_deviation(next, inv_pi);
    if (exact > bound(hi) + kSlack) {
      // Not settled by monotonicity: walk the interval.
      Matrix walk = p;
      for (std::int64_t n = lo + 1; n < hi; ++n) {
        walk = walk * k;
        renormalize_rows(walk);
        record(n, max_relative_deviation(walk, inv_pi));
      }
    }
    record(hi, exact_hi);
    p = std::move(next);
    exact = exact_hi;
    lo = hi;
  }
  r.certified = r.violations == 0;
  return r;
}

std::string ComparisonReport::csv() const {
  std::ostringstream out;
  out << "n,bound,exact_max\n";
  for (std::size_t i = 0; i < n.size(); ++i) out << n[i] << ',' << detail::fmt(bound[i]) << ',' << detail::fmt(exact_max[i]) << '\n';
  return out.str();
}

}  // namespace mclab
