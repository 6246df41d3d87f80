#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/merging.hpp"
#include "mclab/zoo.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mclab;

namespace {

KernelSequence random_sequence(std::mt19937_64& gen, int size, int length, double sparsity) {
  KernelSet ks;
  for (int i = 0; i < length; ++i) ks.emplace_back(oracle::random_stochastic(gen, size, sparsity));
  return KernelSequence::explicit_list(ks);
}

}  // namespace

TEST(Distances, MatchBruteForce) {
  std::mt19937_64 gen(23);
  for (int t = 0; t < 40; ++t) {
    const Matrix p = oracle::random_stochastic(gen, 2 + t % 5, 0.3);
    const auto d = pairwise_distances(p);
    EXPECT_NEAR(d.tv, oracle::brute_tv(p), 1e-15);
    const double rs = oracle::brute_relsup(p);
    if (std::isinf(rs)) {
      EXPECT_TRUE(std::isinf(d.relsup));
    } else {
      EXPECT_NEAR(d.relsup, rs, 1e-12 * (1 + rs));
    }
  }
}

TEST(Distances, ColumnConventions) {
  Matrix zero_col(2, 3);
  zero_col << 0.5, 0.5, 0.0, 0.5, 0.5, 0.0;
  EXPECT_EQ(relsup_pairwise(zero_col), 0.0);
  Matrix mixed(2, 2);
  mixed << 1.0, 0.0, 0.5, 0.5;
  EXPECT_TRUE(std::isinf(relsup_pairwise(mixed)));
  EXPECT_EQ(tv_pairwise(Matrix::Identity(3, 3)), 1.0);
}

TEST(Merging, TrajectoriesAreExactAndMonotone) {
  std::mt19937_64 gen(29);
  const auto seq = random_sequence(gen, 4, 30, 0.5);
  const auto rep = merging_time(seq, 0.01, Metric::tv, 30);
  ASSERT_EQ(rep.tv_trajectory.size(), 31u);
  Matrix prod = Matrix::Identity(4, 4);
  for (int n = 1; n <= 30; ++n) {
    prod = prod * seq.kernel(n).matrix();
    EXPECT_NEAR(rep.tv_trajectory[n], oracle::brute_tv(prod), 1e-12);
    EXPECT_LE(rep.tv_trajectory[n], rep.tv_trajectory[n - 1] + 1e-12);
    EXPECT_LE(rep.relsup_trajectory[n], rep.relsup_trajectory[n - 1] * (1 + 1e-12));
  }
}

TEST(Merging, TimeIsFirstCrossing) {
  const auto seq = KernelSequence::cyclic({constant_rate_bd(8, 0.3, 0.3, 0.4)}, {0});
  const auto rep = merging_time(seq, 0.25, Metric::tv, 500);
  ASSERT_TRUE(rep.tv_time.has_value());
  const auto t = static_cast<std::size_t>(*rep.tv_time);
  EXPECT_LE(rep.tv_trajectory[t], 0.25);
  EXPECT_GT(rep.tv_trajectory[t - 1], 0.25);

  MergingOptions stop;
  stop.stop_when_reached = true;
  const auto short_rep = merging_time(seq, 0.25, Metric::tv, 500, stop);
  EXPECT_EQ(short_rep.tv_time, rep.tv_time);
  EXPECT_EQ(short_rep.horizon, *rep.tv_time);

  const auto never = merging_time(seq, 0.25, Metric::tv, 3);
  EXPECT_FALSE(never.time().has_value());
  EXPECT_NE(never.json().find("not reached"), std::string::npos);
  EXPECT_THROW(merging_time(seq, 1.5, Metric::tv, 3), InvalidArgument);
}

TEST(Merging, ReportFormats) {
  const auto seq = alternating(two_point(0.3, 0.5));
  const auto rep = merging_time(seq, 0.25, Metric::tv, 12);
  const auto csv = rep.csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,tv,relsup,doeblin_bound,block_bound");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
  const auto plot = rep.plotdata();
  const auto first_block = plot.substr(0, plot.find("\n\n"));
  EXPECT_EQ(std::count(first_block.begin(), first_block.end(), '\n'), 13);  // label + 13 rows (last newline trimmed)
}

TEST(Doeblin, EpsilonAndBoundDominate) {
  std::mt19937_64 gen(31);
  const auto seq = random_sequence(gen, 5, 40, 0.4);
  const auto cert = doeblin_bound(seq, 40);
  const auto rep = merging_time(seq, 0.01, Metric::tv, 40, {false, false, 1});
  for (int i = 1; i <= 40; ++i) {
    const Matrix& k = seq.kernel(i).matrix();
    double eps = 0.0;
    for (int y = 0; y < 5; ++y) eps = std::max(eps, k.col(y).minCoeff());
    EXPECT_DOUBLE_EQ(cert.epsilons[i - 1], eps);
    EXPECT_LE(rep.tv_trajectory[i], cert.cumulative_bound[i] + 1e-12);
  }
  EXPECT_EQ(cert.cumulative_bound.front(), 1.0);
}

TEST(Doeblin, FlagsDivergentSums) {
  Matrix positive(2, 2);
  positive << 0.5, 0.5, 0.5, 0.5;
  const auto cert = doeblin_bound(KernelSequence::cyclic({StochasticKernel(positive)}, {0}), 30);
  EXPECT_TRUE(cert.diverges);
  EXPECT_DOUBLE_EQ(cert.cumulative_bound.back(), std::pow(0.5, 30));
}

TEST(BlockContraction, DominatesExactDistance) {
  std::mt19937_64 gen(37);
  const auto seq = random_sequence(gen, 4, 60, 0.6);
  for (std::int64_t block : {1, 2, 3, 5}) {
    const auto traj = block_contraction_trajectory(seq, 60, block);
    const auto rep = merging_time(seq, 0.01, Metric::tv, 60, {false, false, 1});
    for (int n = 0; n <= 60; ++n) EXPECT_LE(rep.tv_trajectory[n], traj[n] + 1e-12) << "block " << block << " n " << n;
    EXPECT_DOUBLE_EQ(block_contraction_bound(seq, 60, block), traj.back());
  }
}

TEST(UniformConditions, PositiveAndSparseKernels) {
  Matrix pos(2, 2);
  pos << 0.4, 0.6, 0.3, 0.7;
  const auto c1 = uniform_conditions_certificate({StochasticKernel(pos)}, 5);
  EXPECT_TRUE(c1.satisfied);
  EXPECT_EQ(c1.ell, 1);
  EXPECT_DOUBLE_EQ(c1.epsilon, 0.3);

  // Lazy path on 4 states: A^3 is positive, A^2 is not.
  const auto bd = constant_rate_bd(3, 0.3, 0.3, 0.4);
  const auto c2 = uniform_conditions_certificate({bd}, 10);
  EXPECT_EQ(c2.ell, 3);
  EXPECT_TRUE(c2.satisfied);

  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  EXPECT_FALSE(uniform_conditions_certificate({StochasticKernel(flip)}, 10).satisfied);
}

TEST(BackwardEnvelopes, MonotoneAndExact) {
  std::mt19937_64 gen(41);
  const auto seq = random_sequence(gen, 4, 25, 0.3);
  const auto env = backward_envelopes(seq, 25);
  EXPECT_TRUE(env.monotone);
  Matrix b = Matrix::Identity(4, 4);
  for (int k = 1; k <= 25; ++k) {
    b = seq.kernel(k).matrix() * b;
    for (int y = 0; y < 4; ++y) {
      EXPECT_NEAR(env.lower[k](y), b.col(y).minCoeff(), 1e-14);
      EXPECT_NEAR(env.upper[k](y), b.col(y).maxCoeff(), 1e-14);
    }
  }
}

TEST(Merging, RelsupSurvivesUnderflow) {
  // Positive entries of the two-point product decay below the smallest double long before n = 1000;
  // the support is tracked exactly, so the mixed column still reads as infinite.
  const auto rep = merging_time(alternating(two_point(0.7, 0.7)), 0.25, Metric::tv, 1000, {false, false, 1});
  for (int n = 1; n <= 1000; ++n) EXPECT_TRUE(std::isinf(rep.relsup_trajectory[n])) << n;
  Matrix p(2, 2), s(2, 2);
  p << 0.0, 1.0, 0.0, 1.0;
  s << 1.0, 1.0, 0.0, 1.0;
  EXPECT_TRUE(std::isinf(relsup_pairwise(p, s)));
  EXPECT_EQ(relsup_pairwise(p), 0.0);
}
