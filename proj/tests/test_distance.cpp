#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankagg/distance.hpp"
#include "rankagg/table1.hpp"

using namespace rankagg;

namespace {

oracle::Seq seq_of(const Ranking& r) { return {r.seq().begin(), r.seq().end()}; }

std::vector<double> values(const WeightVector& w) { return {w.values().begin(), w.values().end()}; }

}  // namespace

TEST(PrefixWeight, Examples) {
  EXPECT_DOUBLE_EQ(prefix_weight(WeightVector{1, 1, 0, 0}, 1, 3), 2.0);
  EXPECT_DOUBLE_EQ(prefix_weight(WeightVector{0, 1, 0, 0}, 2, 5), 1.0);
  EXPECT_DOUBLE_EQ(prefix_weight(WeightVector{1, 2}, 1, 2), 1.0);
  EXPECT_THROW(prefix_weight(WeightVector{1, 2}, 2, 2), Error);
  EXPECT_THROW(prefix_weight(WeightVector{1, 2}, 3, 1), Error);
}

TEST(WeightVector, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(WeightVector({1.0, -0.5}), Error);
  EXPECT_THROW(WeightVector({kInfinity}), Error);
  EXPECT_THROW(WeightVector({std::nan("")}), Error);
}

TEST(PathTableFromAdjacent, Examples) {
  EXPECT_DOUBLE_EQ(path_table_from_adjacent(WeightVector{1, 2})(1, 3), 3.0);
  EXPECT_DOUBLE_EQ(path_table_from_adjacent(WeightVector{1, 1, 1, 1})(1, 5), 4.0);
  EXPECT_DOUBLE_EQ(path_table_from_adjacent(WeightVector{1, 0, 0, 0})(2, 5), 0.0);
  const PathTable f = path_table_from_adjacent(WeightVector{1, 2, 3});
  for (int i = 1; i <= 4; ++i) {
    EXPECT_EQ(f(i, i), 0.0);
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(f(i, j), f(j, i));
  }
}

TEST(PathTableGeneral, Examples) {
  TranspositionWeights phi(3);
  phi.set(1, 2, 1);
  phi.set(2, 3, 1);
  phi.set(1, 3, 5);
  EXPECT_DOUBLE_EQ(path_table_general(phi)(1, 3), 2.0);

  const PathTable cayley = path_table_general(TranspositionWeights::uniform(5));
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) EXPECT_DOUBLE_EQ(cayley(i, j), i == j ? 0.0 : 1.0);

  const PathTable foot = path_table_general(TranspositionWeights::footrule(5));
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) EXPECT_DOUBLE_EQ(foot(i, j), std::abs(i - j));
}

TEST(PathTableGeneral, UnreachableStaysInfinite) {
  TranspositionWeights phi(4);
  phi.set(1, 2, 1);
  phi.set(3, 4, 1);
  const PathTable f = path_table_general(phi);
  EXPECT_TRUE(std::isinf(f(1, 3)));
  EXPECT_FALSE(f.finite());
  EXPECT_DOUBLE_EQ(f(3, 4), 1.0);
}

TEST(PathTableGeneral, AgreesWithAdjacentForm) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const WeightVector w = trial % 2 ? oracle::random_positive_weights(n, rng) : oracle::random_small_int_weights(n, rng);
    const PathTable a = path_table_from_adjacent(w);
    const PathTable b = path_table_general(TranspositionWeights::from_adjacent(w));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) EXPECT_NEAR(a(i, j), b(i, j), 1e-12);
  }
}

TEST(PathTable, TriangleInequality) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const PathTable f = path_table_general(oracle::random_finite_phi(n, rng));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) EXPECT_LE(f(i, j), f(i, k) + f(k, j) + 1e-12);
  }
}

TEST(GeneralizedFootrule, Examples) {
  const PathTable f12 = path_table_from_adjacent(WeightVector{1, 2});
  EXPECT_DOUBLE_EQ(generalized_footrule(Ranking{1, 2, 3}, Ranking{3, 2, 1}, f12), 6.0);
  EXPECT_DOUBLE_EQ(generalized_footrule(Ranking{3, 1, 2}, Ranking{3, 1, 2}, f12), 0.0);
  const PathTable f1111 = path_table_from_adjacent(WeightVector{1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(generalized_footrule(Ranking{1, 2, 3, 4, 5}, Ranking{2, 3, 4, 5, 1}, f1111), 8.0);
  EXPECT_THROW(generalized_footrule(Ranking{1, 2}, Ranking{1, 2, 3}, f12), Error);
}

TEST(WeightedKendallExact, Examples) {
  const Ranking e5 = identity(5);
  EXPECT_EQ(weighted_kendall_exact(Ranking{3, 1, 2}, Ranking{3, 1, 2}, WeightVector{2, 5}), 0.0);
  EXPECT_DOUBLE_EQ(weighted_kendall_exact(e5, Ranking{2, 1, 3, 4, 5}, WeightVector{1, 0, 0, 0}), 1.0);
  // One paid swap across ranks 2/3 carries 1 down and 5 up together.
  EXPECT_DOUBLE_EQ(weighted_kendall_exact(e5, Ranking{5, 2, 3, 4, 1}, WeightVector{0, 1, 0, 0}), 1.0);
}

TEST(WeightedKendallExact, OracleAgreesOnDerivedExample) {
  const auto all = oracle::weighted_kendall_all_pairs({0, 1, 0, 0});
  EXPECT_DOUBLE_EQ(all(oracle::Seq{1, 2, 3, 4, 5}, oracle::Seq{5, 2, 3, 4, 1}), 1.0);
}

TEST(WeightedKendallExact, RefusesAboveCap) {
  const Ranking e10 = identity(10);
  try {
    weighted_kendall_exact(e10, e10, WeightVector(std::vector<double>(9, 1.0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_cap_exceeded);
    EXPECT_NE(std::string(e.what()).find("exact distance unavailable at this size"), std::string::npos);
  }
  EXPECT_THROW(Metric::weighted_kendall(WeightVector(std::vector<double>(9, 1.0)))(e10, e10), Error);
  // A raised cap admits the same call for small n only.
  EXPECT_THROW(weighted_kendall_exact(identity(4), identity(4), WeightVector{1, 1, 1}, 3), Error);
}

TEST(WeightedKendallExact, ZeroOnlyForZeroWeightMoves) {
  // With w_2 = 0, ranks 2 and 3 may be exchanged freely.
  const WeightVector w{1, 0, 1};
  EXPECT_EQ(weighted_kendall_exact(Ranking{1, 2, 3, 4}, Ranking{1, 3, 2, 4}, w), 0.0);
  EXPECT_GT(weighted_kendall_exact(Ranking{1, 2, 3, 4}, Ranking{2, 1, 3, 4}, w), 0.0);
}

TEST(WeightedTranspositionExact, Examples) {
  EXPECT_EQ(weighted_transposition_exact(Ranking{2, 1, 3}, Ranking{2, 1, 3}, TranspositionWeights::uniform(3)), 0.0);
  EXPECT_DOUBLE_EQ(weighted_transposition_exact(Ranking{2, 1, 3}, Ranking{1, 2, 3}, TranspositionWeights::uniform(3)), 1.0);
  TranspositionWeights phi(3);
  phi.set(1, 3, 5);
  phi.set(1, 2, 1);
  phi.set(2, 3, 1);
  EXPECT_DOUBLE_EQ(weighted_transposition_exact(Ranking{3, 2, 1}, Ranking{1, 2, 3}, phi), 3.0);
  const oracle::AllPairs all(3, [&](int a, int b) { return phi(a, b); });
  EXPECT_DOUBLE_EQ(all(oracle::Seq{3, 2, 1}, oracle::Seq{1, 2, 3}), 3.0);
}

TEST(KendallTau, Examples) {
  EXPECT_EQ(kendall_tau(Ranking{1, 2, 3}, Ranking{1, 2, 3}), 0);
  EXPECT_EQ(kendall_tau(Ranking{1, 2, 3}, Ranking{2, 1, 3}), 1);
  EXPECT_EQ(kendall_tau(Ranking{1, 2, 3}, Ranking{3, 2, 1}), 3);
  EXPECT_THROW(kendall_tau(Ranking{1, 2}, Ranking{1, 2, 3}), Error);
}

TEST(SpearmanFootrule, Examples) {
  EXPECT_EQ(spearman_footrule(Ranking{1, 2, 3}, Ranking{3, 2, 1}), 4);
  EXPECT_EQ(spearman_footrule(Ranking{2, 3, 1}, Ranking{2, 3, 1}), 0);
  EXPECT_EQ(spearman_footrule(Ranking{1, 2, 3, 4, 5}, Ranking{2, 3, 4, 5, 1}), 8);
  EXPECT_THROW(spearman_footrule(Ranking{1}, Ranking{1, 2}), Error);
}

TEST(CumulativeObjective, Table1Values) {
  const VoteProfile profile = table1::profile();
  // Frozen from the all-pairs oracle: 26/11 and 8/11.
  const auto uniform = oracle::weighted_kendall_all_pairs({1, 1, 1, 1});
  const auto top1 = oracle::weighted_kendall_all_pairs({1, 0, 0, 0});
  double sum_uniform = 0.0, sum_top1 = 0.0;
  for (const Ranking& v : profile.votes()) {
    sum_uniform += uniform({2, 3, 4, 5, 1}, seq_of(v));
    sum_top1 += top1({1, 4, 3, 2, 5}, seq_of(v));
  }
  ASSERT_DOUBLE_EQ(sum_uniform, 26.0);
  ASSERT_DOUBLE_EQ(sum_top1, 8.0);

  const Objective a = cumulative_objective(Ranking{2, 3, 4, 5, 1}, profile, Metric::weighted_kendall(WeightVector{1, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(a.cumulative, 26.0);
  EXPECT_NEAR(a.average, 2.3636, 5e-4);
  EXPECT_TRUE(a.exact);
  const Objective b = cumulative_objective(Ranking{1, 4, 3, 2, 5}, profile, Metric::weighted_kendall(WeightVector{1, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(b.cumulative, 8.0);
  EXPECT_NEAR(b.average, 0.7273, 5e-4);
}

TEST(CumulativeObjective, ZeroOnCopies) {
  const Ranking p{3, 1, 4, 2};
  const VoteProfile copies({p, p, p});
  const WeightVector w{2, 1, 3};
  for (const Metric& m : {Metric::weighted_kendall(w), Metric::generalized_footrule(path_table_from_adjacent(w)),
                          Metric::weighted_transposition(TranspositionWeights::uniform(4)), Metric::kendall_tau(4),
                          Metric::footrule(4)}) {
    EXPECT_EQ(cumulative_objective(p, copies, m).cumulative, 0.0) << m.name();
  }
  EXPECT_FALSE(cumulative_objective(p, copies, Metric::generalized_footrule(path_table_from_adjacent(w))).exact);
}

TEST(ElementSpace, Examples) {
  const auto tau = element_space([](const Ranking& p, const Ranking& s) { return kendall_tau(p, s); });
  EXPECT_EQ(tau(Ranking{2, 1, 3}, Ranking{1, 2, 3}), 1);
  EXPECT_EQ(tau(Ranking{3, 1, 2}, Ranking{3, 1, 2}), 0);

  const WeightVector w{1, 0};
  const Metric elements = element_space(Metric::weighted_kendall(w));
  const double lhs = elements(Ranking{3, 1, 2}, Ranking{1, 2, 3});
  const double rhs = weighted_kendall_exact(Ranking{2, 3, 1}, Ranking{1, 2, 3}, w);
  EXPECT_DOUBLE_EQ(lhs, rhs);
  EXPECT_EQ(elements.space(), Space::elements);
}

TEST(ExactTable, AgreesWithSinglePairAndBruteForce) {
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const WeightVector w = oracle::random_small_int_weights(n, rng);
      const auto all = oracle::weighted_kendall_all_pairs(values(w));
      const Metric metric = Metric::weighted_kendall(w);
      for (int pair = 0; pair < 20; ++pair) {
        const Ranking p = oracle::random_ranking(n, rng), s = oracle::random_ranking(n, rng);
        const double expected = all(p, s);
        EXPECT_DOUBLE_EQ(metric(p, s), expected);
        EXPECT_DOUBLE_EQ(weighted_kendall_exact(p, s, w), expected);
      }
    }
    for (int trial = 0; trial < 4; ++trial) {
      const TranspositionWeights phi = oracle::random_finite_phi(n, rng);
      const oracle::AllPairs all(n, [&](int a, int b) { return phi(a, b); });
      const Metric metric = Metric::weighted_transposition(phi);
      for (int pair = 0; pair < 20; ++pair) {
        const Ranking p = oracle::random_ranking(n, rng), s = oracle::random_ranking(n, rng);
        EXPECT_NEAR(metric(p, s), all(p, s), 1e-12);
        EXPECT_NEAR(weighted_transposition_exact(p, s, phi), all(p, s), 1e-12);
      }
    }
  }
}

TEST(DistanceProperties, PseudoMetricAxioms) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Metric metric = trial % 3 == 0 ? Metric::weighted_transposition(oracle::random_finite_phi(n, rng))
                          : trial % 3 == 1 ? Metric::weighted_kendall(oracle::random_small_int_weights(n, rng))
                                           : Metric::weighted_kendall(oracle::random_positive_weights(n, rng));
    const Ranking p = oracle::random_ranking(n, rng), s = oracle::random_ranking(n, rng),
                  u = oracle::random_ranking(n, rng);
    EXPECT_EQ(metric(p, p), 0.0);
    EXPECT_NEAR(metric(p, s), metric(s, p), 1e-12);
    EXPECT_LE(metric(p, u), metric(p, s) + metric(s, u) + 1e-12);
  }
}

TEST(DistanceProperties, LeftInvariance) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const WeightVector w = oracle::random_positive_weights(n, rng);
    const Ranking p = oracle::random_ranking(n, rng), s = oracle::random_ranking(n, rng),
                  tau = oracle::random_ranking(n, rng);
    const double d = weighted_kendall_exact(p, s, w);
    EXPECT_NEAR(weighted_kendall_exact(compose(tau, p), compose(tau, s), w), d, 1e-12);
    EXPECT_NEAR(weighted_kendall_exact(identity(n), compose(invert(p), s), w), d, 1e-12);
  }
}

TEST(DistanceProperties, SandwichBoundAdjacent) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const WeightVector w = oracle::random_positive_weights(n, rng);
    const Ranking p = oracle::random_ranking(n, rng), s = oracle::random_ranking(n, rng);
    const double d = weighted_kendall_exact(p, s, w);
    const double D = generalized_footrule(p, s, path_table_from_adjacent(w));
    EXPECT_LE(0.5 * D, d * (1 + 1e-12));
    EXPECT_LE(d, 2.0 * D * (1 + 1e-12));
  }
}

TEST(DistanceProperties, SandwichBoundGeneral) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const TranspositionWeights phi = oracle::random_finite_phi(n, rng);
    const Ranking p = oracle::random_ranking(n, rng), s = oracle::random_ranking(n, rng);
    const double d = weighted_transposition_exact(p, s, phi);
    const double D = generalized_footrule(p, s, path_table_general(phi));
    EXPECT_LE(0.5 * D, d + 1e-12);
    EXPECT_LE(d, 2.0 * D + 1e-12);
  }
}

TEST(DistanceProperties, UniformWeightsGiveInversionCount) {
  for (int n = 1; n <= 5; ++n) {
    const WeightVector ones(std::vector<double>(n - 1, 1.0));
    const Metric metric = Metric::weighted_kendall(ones);
    for (const auto& p : oracle::all_permutations(n))
      for (const auto& s : oracle::all_permutations(n)) {
        const double expected = static_cast<double>(oracle::inversions(p, s));
        ASSERT_EQ(metric(Ranking(p), Ranking(s)), expected);
        ASSERT_EQ(kendall_tau(Ranking(p), Ranking(s)), oracle::inversions(p, s));
      }
  }
}

TEST(DistanceProperties, UniformTranspositionsGiveCayley) {
  for (int n = 1; n <= 5; ++n) {
    const Metric metric = Metric::weighted_transposition(TranspositionWeights::uniform(n));
    for (const auto& p : oracle::all_permutations(n))
      for (const auto& s : oracle::all_permutations(n))
        ASSERT_EQ(metric(Ranking(p), Ranking(s)), oracle::cayley(p, s));
  }
}

TEST(DistanceProperties, FootruleWeightsGiveHalfFootrule) {
  // A transposition of ranks i, j costs |i-j| but moves two candidates that
  // far, so d under phi(i,j) = |i-j| is half the footrule.
  const TranspositionWeights phi = TranspositionWeights::footrule(5);
  const Metric metric = Metric::weighted_transposition(phi);
  const oracle::AllPairs all(5, [&](int a, int b) { return phi(a, b); });
  for (const auto& p : oracle::all_permutations(5))
    for (const auto& s : oracle::all_permutations(5)) {
      const double brute = all(p, s);
      ASSERT_DOUBLE_EQ(metric(Ranking(p), Ranking(s)), brute);
      ASSERT_DOUBLE_EQ(brute, 0.5 * static_cast<double>(spearman_footrule(Ranking(p), Ranking(s))));
    }
}

TEST(Metric, SurrogateAboveCap) {
  const WeightVector w = WeightVector(std::vector<double>(11, 1.0));
  const Metric metric = Metric::weighted_kendall(w);
  EXPECT_FALSE(metric.evaluable());
  const Metric sub = metric.evaluable_or_surrogate();
  EXPECT_EQ(sub.kind(), MetricKind::generalized_footrule);
  EXPECT_FALSE(sub.exact());
  const Ranking e = identity(12);
  EXPECT_DOUBLE_EQ(sub(e, swap_adjacent(e, 3)), 2.0);
}
