#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/io.hpp"
#include "mclab/rng.hpp"
#include "mclab/zoo.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mclab;

namespace {

// Entries of K = Q1 Q2 written out by hand for N = 2n+1.
Matrix stick_product_table(int N, double p, double q, double r, double e1, double e2) {
  const int n = (N - 1) / 2;
  Matrix k = Matrix::Zero(N + 1, N + 1);
  // Even moves reach N-1 (x up to n-1); odd moves stop at N-2 and N-2 -> N is listed separately.
  for (int x = 0; x <= n - 1; ++x) {
    k(2 * x, 2 * x + 2) = p * p;
    k(2 * x + 2, 2 * x) = q * q;
  }
  for (int x = 0; x <= n - 2; ++x) {
    k(2 * x + 1, 2 * x + 3) = q * q;
    k(2 * x + 3, 2 * x + 1) = p * p;
  }
  k(0, 0) = 2 * p * q + r;
  for (int x = 1; x <= N - 2; ++x) k(x, x) = 2 * p * q + r * r;
  for (int x = 1; x <= N - 2; ++x) k(x, x + 1) = k(x + 1, x) = r * (p + q);
  k(0, 1) = q * q + r * (1 - r);
  k(1, 0) = p * p + r * (1 - r);
  k(N - 1, N) = p * e2 + r * q;
  k(N, N - 1) = (1 - e2) * e1 + (1 - e1) * r;
  k(N - 2, N) = q * q;
  k(N, N - 2) = (1 - e1) * p;
  k(N - 1, N - 1) = p * (q + 1 - e2) + r * r;
  k(N, N) = e1 * e2 + (1 - e1) * q;
  return k;
}

}  // namespace

TEST(BirthDeath, ConstantRates) {
  const auto k = constant_rate_bd(5, 0.5, 0.2, 0.3);
  EXPECT_DOUBLE_EQ(k(2, 3), 0.5);
  EXPECT_DOUBLE_EQ(k(2, 1), 0.2);
  EXPECT_DOUBLE_EQ(k(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(k(5, 5), 0.8);
  const auto pi = stationary_measure(k);
  for (int x = 0; x < 5; ++x) EXPECT_NEAR(pi[x + 1] / pi[x], 2.5, 1e-12);
  EXPECT_THROW(constant_rate_bd(5, 0.5, 0.5, 0.5), InvalidArgument);
}

TEST(BirthDeath, GeneralRatesAreReversible) {
  const auto bd = general_bd({0.3, 0.4, 0.5, 0.0}, {0.0, 0.3, 0.2, 0.6});
  EXPECT_LT(bd.detailed_balance_residual, 1e-15);
  EXPECT_LT((bd.pi.weights() - oracle::lu_stationary(bd.kernel.matrix())).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(general_bd({0.3, 0.4}, {0.1, 0.2}), InvalidArgument);
}

TEST(BirthDeath, Pb0SamplerStaysInClass) {
  CounterRng rng(17);
  for (int i = 0; i < 30; ++i) {
    const auto bd = sample_pb0_chain(12, rng);
    EXPECT_TRUE(bd.pb0_class());
    for (int x = 0; x <= 12; ++x) {
      EXPECT_GE((13.0) * bd.pi[x], 0.25);
      EXPECT_LE((13.0) * bd.pi[x], 4.0);
      for (int y = std::max(0, x - 1); y <= std::min(12, x + 1); ++y) {
        EXPECT_GE(bd.kernel(x, y), 0.25);
        EXPECT_LE(bd.kernel(x, y), 0.75);
      }
    }
  }
}

TEST(BirthDeath, ConstantRateSampler) {
  CounterRng rng(19);
  for (int i = 0; i < 200; ++i) {
    const auto c = sample_constant_rates(1.2, 2.0, 1.0 / 3.0, rng);
    EXPECT_NEAR(c.p + c.q + c.r, 1.0, 1e-15);
    EXPECT_GE(c.p / c.q, 1.2 - 1e-12);
    EXPECT_LE(c.p / c.q, 2.0 + 1e-12);
    EXPECT_LE(c.r, 1.0 / 3.0);
  }
  const auto a = random_constant_rate_sequence(8, 1.2, 2.0, 5);
  const auto b = random_constant_rate_sequence(8, 1.2, 2.0, 5);
  EXPECT_TRUE(a.kernel(37) == b.kernel(37));
  EXPECT_FALSE(a.kernel(37) == a.kernel(38));
}

TEST(StickPair, KernelsFollowDefinition) {
  const double p = 0.5, q = 0.3, r = 0.2;
  const auto pair = perturbed_stick_pair(7, p, q, r, 0.25, 0.6);
  EXPECT_DOUBLE_EQ(pair.q1(0, 0), q + r);
  EXPECT_DOUBLE_EQ(pair.q1(0, 1), p);
  EXPECT_DOUBLE_EQ(pair.q1(2, 1), q);
  EXPECT_DOUBLE_EQ(pair.q1(1, 2), q);
  EXPECT_DOUBLE_EQ(pair.q1(3, 2), p);
  EXPECT_DOUBLE_EQ(pair.q1(7, 7), 0.25);
  EXPECT_DOUBLE_EQ(pair.q1(7, 6), 0.75);
  EXPECT_DOUBLE_EQ(pair.q2(0, 1), q);
  EXPECT_DOUBLE_EQ(pair.q2(7, 7), 0.6);
  EXPECT_LT(invariance_residual(pair.pi1, pair.q1), 1e-15);
  EXPECT_LT(invariance_residual(pair.pi2, pair.q2), 1e-15);
  EXPECT_LT(detailed_balance_residual(pair.q1, pair.pi1), 1e-15);
  EXPECT_THROW(perturbed_stick_pair(6, p, q, r, 0, 0), InvalidArgument);
}

TEST(StickPair, ProductMatchesEntryTable) {
  for (int N : {5, 7, 11}) {
    for (double r : {0.0, 0.15}) {
      const double p = 0.55 * (1 - r), q = 1 - p - r;
      const auto pair = perturbed_stick_pair(N, p, q, r, 0.3, 0.45);
      const Matrix k = compose(pair.q1, pair.q2).matrix();
      EXPECT_LT((k - stick_product_table(N, p, q, r, 0.3, 0.45)).cwiseAbs().maxCoeff(), 1e-15) << "N " << N << " r " << r;
    }
  }
}

TEST(StickPair, Relabeling) {
  EXPECT_EQ(stick_relabeling(5), (std::vector<std::size_t>{5, 3, 1, 0, 2, 4}));
  EXPECT_EQ(stick_relabeling(3), (std::vector<std::size_t>{3, 1, 0, 2}));
}

TEST(StickPair, ClosedFormMatchesOracle) {
  for (int N : {5, 11}) {
    for (double p : {0.55, 0.7}) {
      const double q = 1 - p;
      for (auto [e1, e2] : {std::pair{0.0, 0.0}, std::pair{q, p}, std::pair{0.3, 0.7}}) {
        const auto pair = perturbed_stick_pair(N, p, q, 0.0, e1, e2);
        const Vector ref = oracle::lu_stationary(compose(pair.q1, pair.q2).matrix());
        const auto cf = closed_form_invariant(N, p, q, e1, e2);
        EXPECT_LT(((cf.weights() - ref).cwiseAbs().array() / ref.array()).maxCoeff(), 1e-9) << N << " " << p << " " << e1;
      }
    }
  }
  // Case eta1 = q, eta2 = p: both kernels preserve the uniform measure.
  const auto uni = closed_form_invariant(7, 0.6, 0.4, 0.4, 0.6);
  for (int x = 0; x < 8; ++x) EXPECT_NEAR(uni[x], 1.0 / 8, 1e-14);
}

TEST(SmallExamples, FivePointProductHasSmallRecurrentClass) {
  const auto ks = five_point();
  EXPECT_EQ(ks[0].space().label(0), "1");
  const Matrix q0 = oracle::srw_matrix(5, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  EXPECT_LT((ks[0].matrix() - q0).cwiseAbs().maxCoeff(), 1e-15);
  const auto s = classify_structure(compose(ks[1], ks[0]));
  ASSERT_EQ(s.recurrent_classes.size(), 1u);
  EXPECT_EQ(s.recurrent_classes[0], (std::vector<std::size_t>{1, 4}));
}

TEST(SmallExamples, SevenPointIsRelabeled) {
  const auto ks = seven_point();
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(7);
  perm.indices() << 1, 0, 2, 4, 3, 6, 5;
  const Matrix relabeled = perm * ks[0].matrix() * perm.transpose();
  EXPECT_LT((relabeled - ks[1].matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SmallExamples, AdjointPairOfRotation) {
  const auto q0 = rotation_with_holding({0.0, 0.0, 0.5});
  const auto ks = adjoint_pair(q0);
  const auto pi = stationary_measure(q0);
  EXPECT_LT(invariance_residual(pi, ks[1]), 1e-14);
  EXPECT_FALSE(classify_structure(compose(ks[0], ks[1])).irreducible);
  EXPECT_TRUE(classify_structure(q0).sia);
}

TEST(Graphs, GraphKernelDefinition) {
  const auto g = lazy_stick(4).with_weights({1, 2, 3, 1, 2, 2, 1, 3, 1});
  const auto gk = graph_kernel(g);
  for (std::size_t x = 0; x < 5; ++x) EXPECT_NEAR(gk.kernel.matrix().row(static_cast<Eigen::Index>(x)).sum(), 1.0, 1e-15);
  EXPECT_LT(detailed_balance_residual(gk.kernel, gk.pi), 1e-15);
  EXPECT_LT(invariance_residual(gk.pi, gk.kernel), 1e-15);
  // A loop contributes its weight once to W(x).
  EXPECT_DOUBLE_EQ(g.weight_sum(0), 1 + 2);
  EXPECT_DOUBLE_EQ(gk.kernel(0, 0), 1.0 / 3.0);
}

TEST(Graphs, RandomRegular) {
  const auto g = random_regular_graph(20, 3, 9);
  EXPECT_TRUE(g.connected());
  for (std::size_t x = 0; x < 20; ++x) EXPECT_EQ(g.degree(x), 3u);
  const auto again = random_regular_graph(20, 3, 9);
  EXPECT_EQ(to_json(g), to_json(again));
  const auto looped = random_regular_graph(20, 3, 9, true);
  EXPECT_TRUE(looped.has_all_loops());
  EXPECT_THROW(random_regular_graph(5, 3, 1), InvalidArgument);
}

TEST(Graphs, RandomWeightsStayInBand) {
  const auto g = random_weights(lazy_stick(30), 4.0, 3);
  for (double w : g.weights()) {
    EXPECT_GE(w, 1.0);
    EXPECT_LE(w, 4.0);
  }
  EXPECT_LE(g.weight_ratio(), 4.0);
}

TEST(Metropolis, HitsTargetWithinRatioBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_weights(seed % 2 ? lazy_stick(12) : random_regular_graph(12, 3, seed, true), 2.0, seed);
    CounterRng rng(seed + 100);
    Vector t = g.degree_measure().weights();
    for (Eigen::Index x = 0; x < t.size(); ++x) t(x) *= rng.uniform(0.6, 1.6);
    const ProbMeasure target(g.space(), t / t.sum());
    const auto res = metropolis_reweight(g, target);
    EXPECT_LT(res.residual, 1e-12);
    EXPECT_LE(res.graph.weight_ratio(), res.ratio_bound * (1 + 1e-12));
    const auto gk = graph_kernel(res.graph);
    EXPECT_LT((gk.pi.weights() - target.weights()).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(metropolis_reweight(random_regular_graph(10, 3, 1), ProbMeasure::uniform(StateSpace(10))), InvalidArgument);
}

TEST(Catalog, EveryEntryEmitsParsableJson) {
  for (const auto& e : zoo_catalog()) {
    std::map<std::string, double> params = e.defaults;
    if (e.name == "stick_pair") params["N"] = 5;
    std::string text;
    ASSERT_NO_THROW(text = zoo_emit(e.name, params, 1)) << e.name;
    EXPECT_FALSE(text.empty());
  }
  EXPECT_THROW(zoo_emit("constant_rate_bd", {{"bogus", 1}}, 1), ConfigError);
  EXPECT_THROW(zoo_emit("nope", {}, 1), ConfigError);
}
