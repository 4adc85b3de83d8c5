#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tdrd/datasets.hpp"
#include "tdrd/parabolic.hpp"

using namespace tdrd;

TEST(Parabolic, SymmetricPartOfExample) {
  const auto s = symmetric_part(datasets::ex5_params());
  ASSERT_EQ(s.off.size(), 4u);
  EXPECT_DOUBLE_EQ(s.off[0], 0.4);
  EXPECT_DOUBLE_EQ(s.off[1], 0.475);
  EXPECT_DOUBLE_EQ(s.off[2], 0.4);
  EXPECT_DOUBLE_EQ(s.off[3], 0.475);
  const Eigen::MatrixXd A = build_matrix(datasets::ex5_params(), false);
  EXPECT_LE((s.dense() - 0.5 * (A + A.transpose())).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(is_positive_definite(s));
}

TEST(Parabolic, SymmetricInputIsUnchanged) {
  ToeplitzParams p{1.0, 2.0, 0.3, 0.6, 0.3, 0.6, 4};
  EXPECT_EQ(symmetric_part(p).dense(), build_matrix(p, false));
  p.m = 2;
  const auto s = symmetric_part(ToeplitzParams{1.0, 2.0, 0.3, 0.6, 0.5, 0.6, 2});
  ASSERT_EQ(s.off.size(), 1u);
  EXPECT_DOUBLE_EQ(s.off[0], 0.4);
}

TEST(Parabolic, ExampleRatio) {
  const auto r = check_parabolicity(datasets::ex5_params());
  EXPECT_NEAR(r.ratio, std::sqrt(1.5) / 0.95, 1e-15);
  EXPECT_NEAR(r.ratio, 1.2892, 1e-4);
  EXPECT_NEAR(r.threshold, std::cos(std::numbers::pi / 6), 1e-15);
  EXPECT_TRUE(r.satisfied);
  EXPECT_TRUE(r.minors_positive);
  EXPECT_NEAR(r.margin, r.ratio - r.threshold, 1e-15);
}

TEST(Parabolic, ViolatedWhenBandsDominate) {
  for (int m = 2; m <= 10; ++m) {
    const auto r = check_parabolicity(ToeplitzParams{1, 1, 1.2, 0.5, 0.8, 1.5, m});
    EXPECT_DOUBLE_EQ(r.ratio, 0.5);
    EXPECT_FALSE(r.satisfied);
  }
  const auto big = check_parabolicity(ToeplitzParams{1e3, 1e3, 1.2, 0.5, 0.8, 1.5, 7});
  EXPECT_TRUE(big.satisfied);
  EXPECT_TRUE(big.minors_positive);
}

TEST(Parabolic, ThresholdMonotoneInM) {
  double prev = 0.0;
  for (int m = 2; m <= 30; ++m) {
    const auto r = check_parabolicity(ToeplitzParams{1, 2, 0.3, 0.4, 0.5, 0.6, m});
    EXPECT_GT(r.threshold, prev);
    EXPECT_DOUBLE_EQ(r.ratio, std::sqrt(2.0) / 1.0);
    prev = r.threshold;
  }
}

TEST(Parabolic, MinorsSmallCases) {
  SymmetricTridiagonal id{{1, 1, 1}, {0, 0}};
  EXPECT_TRUE(is_positive_definite(id));
  SymmetricTridiagonal singular{{1, 1}, {1}};
  const auto rep = leading_minors(singular);
  EXPECT_FALSE(is_positive_definite(singular));
  EXPECT_NE(rep.status, Definiteness::Positive);
  EXPECT_NEAR(rep.minors[1], 0.0, 1e-15);
}

TEST(Parabolic, MinorsMatchDeterminants) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 2);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng() % 8);
    SymmetricTridiagonal s;
    for (int i = 0; i < m; ++i) s.diag.push_back(u(rng));
    for (int i = 0; i + 1 < m; ++i) s.off.push_back(u(rng));
    const auto rep = leading_minors(s);
    const Eigen::MatrixXd T = s.dense();
    for (int k = 1; k <= m; ++k) {
      EXPECT_NEAR(rep.minors[static_cast<std::size_t>(k - 1)], T.topLeftCorner(k, k).determinant(), 1e-10);
    }
  }
}

TEST(Parabolic, SatisfiedImpliesMinorsPositive) {
  std::mt19937_64 rng(99);
  int satisfied = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto p = oracle::random_params(rng, 2 + static_cast<int>(rng() % 12));
    const auto r = check_parabolicity(p);
    if (r.satisfied) {
      ++satisfied;
      EXPECT_TRUE(r.minors_positive);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_part(p).dense());
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
  }
  EXPECT_GT(satisfied, 50);
}

TEST(Parabolic, AndelicImpliesDefinite) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 2);
  int hits = 0;
  for (int t = 0; t < 2000; ++t) {
    const int m = 2 + static_cast<int>(rng() % 8);
    SymmetricTridiagonal s;
    for (int i = 0; i < m; ++i) s.diag.push_back(u(rng));
    for (int i = 0; i + 1 < m; ++i) s.off.push_back(u(rng) * 0.6);
    if (andelic_condition(s)) {
      ++hits;
      EXPECT_TRUE(is_positive_definite(s));
    }
  }
  EXPECT_GT(hits, 50);
}
