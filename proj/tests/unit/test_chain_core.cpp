#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/io.hpp"
#include "mclab/sequence.hpp"
#include "mclab/state.hpp"
#include "mclab/zoo.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mclab;

namespace {

StochasticKernel two_state(double a, double b) {
  Matrix m(2, 2);
  m << 1 - a, a, b, 1 - b;
  return StochasticKernel(m);
}

}  // namespace

TEST(StateSpace, LabelsAndLookup) {
  StateSpace s({"a", "b", "c"});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.index_of("c"), 2u);
  EXPECT_EQ(s.index_of("z"), 3u);
  EXPECT_EQ(StateSpace(3).label(0), "0");
  EXPECT_THROW(StateSpace(std::vector<std::string>{"a", "a"}), InvalidArgument);
}

TEST(StochasticKernel, RejectsBadInput) {
  Matrix neg(2, 2);
  neg << 1.5, -0.5, 0.5, 0.5;
  EXPECT_THROW(StochasticKernel{neg}, InvalidArgument);
  Matrix rect(2, 3);
  rect.setConstant(1.0 / 3);
  EXPECT_THROW(StochasticKernel{rect}, DimensionError);
  Matrix off(2, 2);
  off << 0.5, 0.6, 0.5, 0.5;
  EXPECT_THROW(StochasticKernel{off}, InvalidArgument);
}

TEST(StochasticKernel, RenormalizesSmallDrift) {
  Matrix m(2, 2);
  m << 0.5 + 1e-12, 0.5, 0.25, 0.75;
  const double drift = renormalize_rows(m);
  EXPECT_NEAR(drift, 1e-12, 1e-15);
  EXPECT_NEAR(m.row(0).sum(), 1.0, 2.3e-16);
}

TEST(ProbMeasure, NormalizationAndPositivity) {
  Vector w(3);
  w << 0.2, 0.3, 0.5;
  ProbMeasure mu(w);
  EXPECT_TRUE(mu.positive());
  EXPECT_FALSE(ProbMeasure::dirac(StateSpace(3), 1).positive());
  Vector bad(2);
  bad << 0.7, 0.7;
  EXPECT_THROW(ProbMeasure{bad}, InvalidArgument);
  EXPECT_DOUBLE_EQ(tv_distance(mu.weights(), ProbMeasure::uniform(StateSpace(3)).weights()),
                   oracle::brute_tv_measures(mu.weights(), Vector::Constant(3, 1.0 / 3)));
}

TEST(Chain, ComposeRequiresSameSpace) {
  EXPECT_THROW(compose(StochasticKernel::identity(StateSpace(2)), StochasticKernel::identity(StateSpace(3))), DimensionError);
}

TEST(Chain, ForwardAndBackwardProducts) {
  std::mt19937_64 gen(3);
  KernelSet ks;
  for (int i = 0; i < 4; ++i) ks.emplace_back(oracle::random_stochastic(gen, 3));
  const auto seq = KernelSequence::explicit_list(ks);
  const Matrix fwd = ks[1].matrix() * ks[2].matrix() * ks[3].matrix();
  const Matrix bwd = ks[3].matrix() * ks[2].matrix() * ks[1].matrix();
  EXPECT_LT((product(seq, 1, 4).matrix() - fwd).norm(), 1e-14);
  EXPECT_LT((product(seq, 1, 4, ProductOrder::backward).matrix() - bwd).norm(), 1e-14);
  EXPECT_TRUE(product(seq, 2, 2) == StochasticKernel::identity(seq.space()));
  EXPECT_THROW(product(seq, 3, 2), InvalidArgument);
}

TEST(Chain, EvolveMatchesProductRows) {
  std::mt19937_64 gen(5);
  KernelSet ks{StochasticKernel(oracle::random_stochastic(gen, 4)), StochasticKernel(oracle::random_stochastic(gen, 4))};
  const auto seq = alternating(ks);
  const auto mu0 = ProbMeasure(oracle::random_positive(gen, 4));
  const auto traj = evolve(mu0, seq, 7);
  ASSERT_EQ(traj.size(), 8u);
  const Vector direct = mu0.weights().transpose() * product(seq, 0, 7).matrix();
  EXPECT_LT((traj[7].weights() - direct).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Chain, StructureOfPeriodicAndReducibleKernels) {
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  const auto r = classify_structure(StochasticKernel(flip));
  EXPECT_TRUE(r.irreducible);
  EXPECT_FALSE(r.aperiodic);
  EXPECT_EQ(r.period, 2u);
  EXPECT_FALSE(r.sia);

  const auto id = classify_structure(StochasticKernel::identity(StateSpace(3)));
  EXPECT_EQ(id.recurrent_classes.size(), 3u);
  EXPECT_FALSE(id.sia);

  Matrix absorbing(3, 3);
  absorbing << 1, 0, 0, 0.5, 0, 0.5, 0, 0.5, 0.5;
  const auto a = classify_structure(StochasticKernel(absorbing));
  EXPECT_FALSE(a.irreducible);
  EXPECT_TRUE(a.sia);
  ASSERT_EQ(a.recurrent_classes.size(), 1u);
  EXPECT_EQ(a.recurrent_classes[0], std::vector<std::size_t>{0});
}

TEST(Chain, StationaryMatchesLeastSquaresOracle) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 9;
    const Matrix k = oracle::random_stochastic(gen, n, 0.3);
    if (!oracle::brute_sia(k)) continue;
    const auto pi = stationary_measure(StochasticKernel(k));
    const Vector ref = oracle::lu_stationary(k);
    EXPECT_LT((pi.weights() - ref).cwiseAbs().maxCoeff(), 1e-12) << "trial " << trial;
    EXPECT_LT(invariance_residual(pi, StochasticKernel(k)), 1e-14);
  }
}

TEST(Chain, StationaryOfTransientStatesIsZero) {
  Matrix m(3, 3);
  m << 0.2, 0.8, 0.0, 0.6, 0.4, 0.0, 0.3, 0.3, 0.4;
  const auto pi = stationary_measure(StochasticKernel(m));
  EXPECT_EQ(pi[2], 0.0);
  EXPECT_NEAR(pi[0], 0.6 / 1.4, 1e-15);
  EXPECT_THROW(stationary_measure(StochasticKernel::identity(StateSpace(2))), ReducibleKernelError);
}

TEST(Chain, AdjointProperties) {
  std::mt19937_64 gen(17);
  const Matrix k = oracle::random_stochastic(gen, 5);
  const auto kk = StochasticKernel(k);
  const auto pi = stationary_measure(kk);
  const auto adj = adjoint(kk, pi);
  EXPECT_TRUE(adj.pi_invariant);
  // pi(x) K*(x,y) = pi(y) K(y,x)
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) EXPECT_NEAR(pi[x] * adj.matrix(x, y), pi[y] * k(y, x), 1e-15);
  const auto back = adjoint_kernel(adjoint_kernel(kk, pi), pi);
  EXPECT_LT((back.matrix() - k).cwiseAbs().maxCoeff(), 1e-13);

  // Reversible kernels are self-adjoint.
  const auto bd = constant_rate_bd(6, 0.3, 0.5, 0.2);
  const auto bpi = stationary_measure(bd);
  EXPECT_LT(detailed_balance_residual(bd, bpi), 1e-15);
  EXPECT_LT((adjoint_kernel(bd, bpi).matrix() - bd.matrix()).cwiseAbs().maxCoeff(), 1e-13);

  EXPECT_THROW(adjoint(kk, ProbMeasure::dirac(kk.space(), 0)), NonPositiveMeasureError);
  const auto non_inv = adjoint(kk, ProbMeasure::uniform(kk.space()));
  EXPECT_FALSE(non_inv.pi_invariant);
}

TEST(Chain, ContractionCoefficientIsSubmultiplicative) {
  std::mt19937_64 gen(19);
  for (int i = 0; i < 30; ++i) {
    const Matrix a = oracle::random_stochastic(gen, 4, 0.4), b = oracle::random_stochastic(gen, 4, 0.4);
    EXPECT_NEAR(contraction_coefficient(a), oracle::brute_tv(a), 1e-15);
    EXPECT_LE(contraction_coefficient(Matrix(a * b)), contraction_coefficient(a) * contraction_coefficient(b) + 1e-15);
  }
}

TEST(Sequence, KindsAndDeterminism) {
  const auto pair = two_point(0.3, 0.6);
  const auto alt = alternating(pair);
  EXPECT_TRUE(alt.kernel(1) == pair[1]);
  EXPECT_TRUE(alt.kernel(2) == pair[0]);
  EXPECT_TRUE(alt.kernel(0) == pair[0]);

  const auto a = KernelSequence::iid(pair, {0.3, 0.7}, 99);
  const auto b = KernelSequence::iid(pair, {0.3, 0.7}, 99);
  int ones = 0;
  for (int i = 1; i <= 2000; ++i) {
    EXPECT_EQ(a.letter(i), b.letter(i));
    ones += static_cast<int>(a.letter(i));
  }
  EXPECT_NEAR(ones / 2000.0, 0.7, 0.05);
  EXPECT_EQ(a.letter(1500), a.letter(1500));

  const auto list = KernelSequence::explicit_list(pair);
  EXPECT_TRUE(list.extends_by_reuse());
  EXPECT_TRUE(list.kernel(0) == pair[1]);
  EXPECT_TRUE(list.kernel(-1) == pair[0]);
  EXPECT_THROW(list.kernel(3), std::out_of_range);
  EXPECT_THROW(KernelSequence::cyclic(pair, {0, 2}), InvalidArgument);
}

TEST(Io, RoundTrips) {
  const auto k = constant_rate_bd(4, 0.2, 0.3, 0.5);
  EXPECT_TRUE(kernel_from_json(to_json(k)) == k);
  const auto pi = stationary_measure(k);
  EXPECT_LT((measure_from_json(to_json(pi)).weights() - pi.weights()).cwiseAbs().maxCoeff(), 1e-15);
  const auto seq = KernelSequence::iid(two_point(0.2, 0.4), {0.5, 0.5}, 7);
  const auto seq2 = sequence_from_json(to_json(seq));
  for (int i = 1; i < 50; ++i) EXPECT_EQ(seq.letter(i), seq2.letter(i));
  const auto g = lazy_stick(4);
  const auto g2 = graph_from_json(to_json(g));
  EXPECT_EQ(g2.edges().size(), g.edges().size());
  EXPECT_EQ(g2.degree_sum(), g.degree_sum());
  const auto five = five_point();
  const auto five2 = kernel_set_from_json(to_json(five));
  ASSERT_EQ(five2.size(), 2u);
  EXPECT_EQ(five2[1].space().label(0), "1");
  EXPECT_TRUE(five2[1] == five[1]);
}

TEST(Io, ErrorsNameTheField) {
  try {
    kernel_from_json(R"({"matrix": [[0.5, 0.5], [0.5, "x"]]})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("matrix"), std::string::npos);
  }
  EXPECT_THROW(sequence_from_json(R"({"kind": "bogus", "kernels": []})"), ConfigError);
  EXPECT_THROW(kernel_from_json("not json"), ConfigError);
}
