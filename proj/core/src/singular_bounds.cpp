#include "mclab/singular_bounds.hpp"

#include "format.hpp"
#include "mclab/chain.hpp"
#include "mclab/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mclab {

namespace {

constexpr double kConsistencyTolerance = 1e-10;
constexpr double kViolationSlack = 1e-12;

void require_floor(const ProbMeasure& mu, const char* what) {
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (!(mu[x] >= kPositivityFloor)) throw NonPositiveMeasureError(std::string(what) + ": measure below positivity floor", x, mu[x]);
  }
}

void check_pre(const StochasticKernel& k, const ProbMeasure& mu_prev, const ProbMeasure& mu_next, const char* what) {
  if (!(k.space() == mu_prev.space()) || !(k.space() == mu_next.space())) throw DimensionError(std::string(what) + ": state spaces differ");
  require_floor(mu_prev, what);
  require_floor(mu_next, what);
  const double residual = (k.matrix().transpose() * mu_prev.weights() - mu_next.weights()).cwiseAbs().maxCoeff();
  if (residual > kConsistencyTolerance) throw InconsistentMeasureError(std::string(what) + ": mu_next != mu_prev K", residual);
}

Vector singular_values(const Matrix& m) {
  if (m.rows() <= 128) return Eigen::JacobiSVD<Matrix>(m).singularValues();
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

}  // namespace

MeasureTrajectory measure_trajectory(const KernelSequence& seq, const ProbMeasure& mu0, std::int64_t n) {
  MeasureTrajectory t{evolve(mu0, seq, n)};
  for (const auto& mu : t.mu) require_floor(mu, "measure_trajectory");
  return t;
}

double step_sigma(const StochasticKernel& k, const ProbMeasure& mu_prev, const ProbMeasure& mu_next) {
  check_pre(k, mu_prev, mu_next, "step_sigma");
  if (k.size() == 1) return 0.0;
  const Matrix m = mu_prev.weights().cwiseSqrt().asDiagonal() * k.matrix() * mu_next.weights().cwiseSqrt().cwiseInverse().asDiagonal();
  const Vector s = singular_values(m);
  if (std::abs(s(0) - 1.0) > kConsistencyTolerance) {
    throw InconsistentMeasureError("step_sigma: top singular value is not 1", std::abs(s(0) - 1.0));
  }
  return std::clamp(s(1), 0.0, 1.0);
}

StochasticKernel pi_kernel(const StochasticKernel& k, const ProbMeasure& mu_prev, const ProbMeasure& mu_next) {
  check_pre(k, mu_prev, mu_next, "pi_kernel");
  Matrix p = mu_next.weights().cwiseInverse().asDiagonal() * k.matrix().transpose() * mu_prev.weights().asDiagonal() * k.matrix();
  return StochasticKernel(k.space(), std::move(p));
}

double second_eigenvalue(const StochasticKernel& p) {
  if (p.size() == 1) return 0.0;
  Eigen::EigenSolver<Matrix> es(p.matrix(), false);
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev[1];
}

SingularBoundReport thsing_bounds(const KernelSequence& seq, const ProbMeasure& mu0, std::int64_t n, bool keep_matrices) {
  if (n < 0) throw InvalidArgument("thsing_bounds: n must be >= 0");
  const auto traj = measure_trajectory(seq, mu0, n);
  const auto size = static_cast<Eigen::Index>(seq.size());
  const Vector inv_sqrt_mu0 = mu0.weights().cwiseSqrt().cwiseInverse();

  SingularBoundReport r;
  r.horizon = n;
  r.sigma_product.push_back(1.0);
  Matrix p = Matrix::Identity(size, size);
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k > 0) {
      const auto kernel = seq.kernel(k);
      const auto i = static_cast<std::size_t>(k);
      const double sigma = step_sigma(kernel, traj.mu[i - 1], traj.mu[i]);
      r.sigmas.push_back(sigma);
      r.sigma_product.push_back(r.sigma_product.back() * sigma);
      p = p * kernel.matrix();
      renormalize_rows(p);
    }
    const Vector& mu = traj.mu[static_cast<std::size_t>(k)].weights();
    const double prod = r.sigma_product.back();

    Vector tv_b = inv_sqrt_mu0 * prod;
    Vector tv_e(size);
    for (Eigen::Index x = 0; x < size; ++x) tv_e(x) = 0.5 * (p.row(x).transpose() - mu).cwiseAbs().sum();
    const Matrix rs_b = (inv_sqrt_mu0 * mu.cwiseSqrt().cwiseInverse().transpose()) * prod;
    const Matrix rs_e = (p * mu.cwiseInverse().asDiagonal()).array() - 1.0;
    const Matrix rs_abs = rs_e.cwiseAbs();

    r.violations += static_cast<std::size_t>(((tv_e - tv_b).array() > kViolationSlack).count());
    r.violations += static_cast<std::size_t>(((rs_abs - rs_b).array() > kViolationSlack).count());
    r.max_tv_bound.push_back(tv_b.maxCoeff());
    r.max_tv_exact.push_back(tv_e.maxCoeff());
    r.max_relsup_bound.push_back(rs_b.maxCoeff());
    r.max_relsup_exact.push_back(rs_abs.maxCoeff());
    r.min_tv_gap.push_back((tv_b - tv_e).minCoeff());
    r.min_relsup_gap.push_back((rs_b - rs_abs).minCoeff());
    r.tv_bound.push_back(std::move(tv_b));
    r.tv_exact.push_back(std::move(tv_e));
    if (keep_matrices) {
      r.relsup_bound.push_back(rs_b);
      r.relsup_exact.push_back(rs_abs);
    }
  }
  return r;
}

std::string SingularBoundReport::csv() const {
  std::ostringstream out;
  out << "n,sigma_n,sigma_product,tv_bound,tv_exact,relsup_bound,relsup_exact\n";
  for (std::size_t k = 0; k < sigma_product.size(); ++k) {
    out << k << ',' << (k == 0 ? std::string() : detail::fmt(sigmas[k - 1])) << ',' << detail::fmt(sigma_product[k]) << ','
        << detail::fmt(max_tv_bound[k]) << ',' << detail::fmt(max_tv_exact[k]) << ',' << detail::fmt(max_relsup_bound[k]) << ','
        << detail::fmt(max_relsup_exact[k]) << '\n';
  }
  return out.str();
}

HomogeneousBoundReport homogeneous_bounds(const StochasticKernel& k, const ProbMeasure& mu0, std::int64_t n) {
  if (n < 0) throw InvalidArgument("homogeneous_bounds: n must be >= 0");
  require_floor(mu0, "homogeneous_bounds");
  const auto pi = stationary_measure(k);
  require_floor(pi, "homogeneous_bounds");
  HomogeneousBoundReport r;
  r.beta = step_sigma(k, pi, pi);

  const Vector& w0 = mu0.weights();
  const Vector& wp = pi.weights();
  const double f0_norm = std::sqrt((w0.array().square() / wp.array()).sum());
  const double mu0_star = w0.minCoeff();
  const auto size = static_cast<Eigen::Index>(k.size());

  Matrix p = Matrix::Identity(size, size);
  auto mu = mu0;
  double prod = 1.0;
  double beta_pow = 1.0;
  for (std::int64_t step = 0; step <= n; ++step) {
    if (step > 0) {
      auto next = push_forward(mu, k);
      require_floor(next, "homogeneous_bounds");
      prod *= step_sigma(k, mu, next);
      mu = std::move(next);
      p = p * k.matrix();
      renormalize_rows(p);
      beta_pow *= r.beta;
    }
    const Vector& wn = mu.weights();
    const Vector inv_sqrt_n = wn.cwiseSqrt().cwiseInverse();

    r.quant_exact.push_back((wn - wp).cwiseAbs().sum());
    r.quant_bound.push_back(f0_norm * beta_pow);

    const Matrix dev = ((p * wn.cwiseInverse().asDiagonal()).array() - 1.0).abs();
    const Matrix bound1 = (w0.cwiseSqrt().cwiseInverse() * inv_sqrt_n.transpose()) * prod;
    r.hom1_exact.push_back(dev.maxCoeff());
    r.hom1_bound.push_back(bound1.maxCoeff());
    r.violations += static_cast<std::size_t>(((dev - bound1).array() > kViolationSlack).count());

    const Vector dev2 = (wp.cwiseQuotient(wn).array() - 1.0).abs();
    const Vector bound2 = inv_sqrt_n * (prod / std::sqrt(mu0_star));
    r.hom2_exact.push_back(dev2.maxCoeff());
    r.hom2_bound.push_back(bound2.maxCoeff());
    r.violations += static_cast<std::size_t>(((dev2 - bound2).array() > kViolationSlack).count());

    if (r.quant_exact.back() > r.quant_bound.back() + kViolationSlack) ++r.violations;
  }
  return r;
}

}  // namespace mclab
