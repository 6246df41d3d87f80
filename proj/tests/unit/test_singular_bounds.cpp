#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/singular_bounds.hpp"
#include "mclab/zoo.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mclab;

namespace {

// Second singular value by power iteration of A^T A on the complement of sqrt(mu_next).
double power_sigma(const Matrix& k, const Vector& mu_prev, const Vector& mu_next) {
  const Matrix a = mu_prev.cwiseSqrt().asDiagonal() * k * mu_next.cwiseSqrt().cwiseInverse().asDiagonal();
  const Matrix ata = a.transpose() * a;
  const Vector top = mu_next.cwiseSqrt();
  Vector v = Vector::LinSpaced(k.rows(), 1.0, 2.0);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    v -= top.dot(v) * top;
    v.normalize();
    Vector w = ata * v;
    w -= top.dot(w) * top;
    lambda = v.dot(w);
    v = w;
    if (v.norm() == 0.0) return 0.0;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace

TEST(StepSigma, MatchesPowerIteration) {
  std::mt19937_64 gen(43);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + t % 5;
    const Matrix k = oracle::random_stochastic(gen, n);
    const Vector mu = oracle::random_positive(gen, n);
    const Vector next = (mu.transpose() * k).transpose();
    const double s = step_sigma(StochasticKernel(k), ProbMeasure(mu), ProbMeasure(next));
    EXPECT_NEAR(s, power_sigma(k, mu, next), 1e-8);
    EXPECT_LE(s, 1.0 + 1e-12);
    // sigma^2 is the second eigenvalue of the P kernel.
    const auto p = pi_kernel(StochasticKernel(k), ProbMeasure(mu), ProbMeasure(next));
    EXPECT_NEAR(second_eigenvalue(p), s * s, 1e-10);
    for (int x = 0; x < n; ++x) EXPECT_NEAR(p.matrix().row(x).sum(), 1.0, 1e-13);
  }
}

TEST(StepSigma, ReversibleCaseIsSpectralRadius) {
  const auto k = constant_rate_bd(7, 0.25, 0.45, 0.3);
  const auto pi = stationary_measure(k);
  const auto ev = oracle::real_eigenvalues(k.matrix());
  const double expected = std::max(std::abs(ev[1]), std::abs(ev.back()));
  EXPECT_NEAR(step_sigma(k, pi, pi), expected, 1e-12);
}

TEST(StepSigma, Preconditions) {
  const auto k = constant_rate_bd(3, 0.3, 0.3, 0.4);
  const auto u = ProbMeasure::uniform(k.space());
  Vector skew(4);
  skew << 0.4, 0.2, 0.2, 0.2;
  EXPECT_THROW(step_sigma(k, u, ProbMeasure(skew)), InconsistentMeasureError);
  EXPECT_THROW(step_sigma(k, ProbMeasure::dirac(k.space(), 0), push_forward(ProbMeasure::dirac(k.space(), 0), k)),
               NonPositiveMeasureError);
}

TEST(ThSing, BoundsDominateOnRandomSequences) {
  std::mt19937_64 gen(47);
  for (int t = 0; t < 10; ++t) {
    const auto seq = random_constant_rate_sequence(6 + t, 1.2, 2.0, 1000 + t);
    const auto mu0 = ProbMeasure(oracle::random_positive(gen, 7 + t));
    const auto rep = thsing_bounds(seq, mu0, 60, t == 0);
    EXPECT_EQ(rep.violations, 0u);
    ASSERT_EQ(rep.sigma_product.size(), 61u);
    for (int n = 1; n <= 60; ++n) EXPECT_LE(rep.sigma_product[n], rep.sigma_product[n - 1] * (1 + 1e-14));
    if (t == 0) {
      ASSERT_EQ(rep.relsup_bound.size(), 61u);
      // The tv bound at state x equals mu0(x)^{-1/2} times the product of sigmas.
      for (int x = 0; x < 7; ++x) EXPECT_NEAR(rep.tv_bound[10](x), rep.sigma_product[10] / std::sqrt(mu0[x]), 1e-12);
    }
  }
}

TEST(ThSing, ExactTvFromDirectEvolution) {
  const auto pair = perturbed_stick_pair(5, 0.6, 0.3, 0.1, 0.2, 0.4);
  const auto seq = KernelSequence::cyclic({pair.q1, pair.q2}, {0, 1});
  const auto mu0 = ProbMeasure::uniform(seq.space());
  const auto rep = thsing_bounds(seq, mu0, 12);
  Matrix prod = Matrix::Identity(6, 6);
  for (int n = 1; n <= 12; ++n) prod = prod * seq.kernel(n).matrix();
  const Vector mun = (mu0.weights().transpose() * prod).transpose();
  for (int x = 0; x < 6; ++x) EXPECT_NEAR(rep.tv_exact[12](x), oracle::brute_tv_measures(prod.row(x).transpose(), mun), 1e-13);
}

TEST(ThSing, RelabelingInvariance) {
  std::mt19937_64 gen(53);
  const Matrix k1 = oracle::random_stochastic(gen, 5), k2 = oracle::random_stochastic(gen, 5);
  const Vector mu = oracle::random_positive(gen, 5);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
  perm.indices() << 3, 0, 4, 1, 2;
  auto relabel = [&](const Matrix& m) { return Matrix(perm * m * perm.transpose()); };
  const auto a = thsing_bounds(alternating({StochasticKernel(k1), StochasticKernel(k2)}), ProbMeasure(mu), 15);
  const auto b = thsing_bounds(alternating({StochasticKernel(relabel(k1)), StochasticKernel(relabel(k2))}),
                               ProbMeasure(Vector(perm * mu)), 15);
  for (std::size_t i = 0; i < a.sigmas.size(); ++i) EXPECT_NEAR(a.sigmas[i], b.sigmas[i], 1e-12);
}

TEST(Homogeneous, BoundsHoldAndBetaIsSecondEigenvalue) {
  const auto k = constant_rate_bd(9, 0.3, 0.4, 0.3);
  std::mt19937_64 gen(59);
  const auto mu0 = ProbMeasure(oracle::random_positive(gen, 10));
  const auto rep = homogeneous_bounds(k, mu0, 80);
  EXPECT_EQ(rep.violations, 0u);
  const auto ev = oracle::real_eigenvalues(k.matrix());
  EXPECT_NEAR(rep.beta, std::max(std::abs(ev[1]), std::abs(ev.back())), 1e-12);
  EXPECT_EQ(rep.quant_exact.size(), 81u);
}
