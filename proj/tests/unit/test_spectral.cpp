#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tdrd/datasets.hpp"
#include "tdrd/error.hpp"
#include "tdrd/parabolic.hpp"
#include "tdrd/spectral.hpp"

using namespace tdrd;

namespace {

ToeplitzParams one_toeplitz(double a, double b, double c, int m) {
  return {a, a, b, b, c, c, m};
}

}  // namespace

TEST(Spectral, ExampleMatrixMatchesHandWrittenEntries) {
  const auto p = datasets::ex5_params();
  EXPECT_EQ(build_matrix(p, true), oracle::handmade_AT(p));
  EXPECT_EQ(build_matrix(p, false), oracle::handmade_AT(p).transpose());
  const auto AT = build_matrix(p, true);
  EXPECT_DOUBLE_EQ(AT(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(AT(1, 0), 0.3);
  EXPECT_DOUBLE_EQ(AT(2, 1), 0.25);
  EXPECT_DOUBLE_EQ(AT(1, 2), 0.7);
}

TEST(Spectral, SmallOrders) {
  ToeplitzParams p{1.1, 1.7, 0.3, 0.9, 0.4, 0.2, 2};
  Eigen::Matrix2d expect;
  expect << 1.1, 0.4, 0.3, 1.7;
  EXPECT_EQ(Eigen::MatrixXd(expect), build_matrix(p, false));

  p.m = 3;
  Eigen::Matrix3d three;
  three << 1.1, 0.4, 0, 0.3, 1.7, 0.2, 0, 0.9, 1.1;
  EXPECT_EQ(Eigen::MatrixXd(three), build_matrix(p, false));
}

TEST(Spectral, ValidateRejectsBadParams) {
  ToeplitzParams p = datasets::ex5_params();
  p.gamma2 = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = datasets::ex5_params();
  p.m = 1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = datasets::ex5_params();
  p.alpha1 = std::nan("");
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Spectral, DerivedConstants) {
  const auto p = datasets::ex5_params();
  const auto dc = derived_constants(p);
  EXPECT_NEAR(dc.beta, 1.0801, 1e-4);
  EXPECT_NEAR(dc.s, std::sqrt(0.075 / 0.35), 1e-15);
  EXPECT_NEAR(dc.s, 0.462910, 1e-6);
  EXPECT_NEAR(dc.beta * dc.beta, p.beta2 * p.gamma2 / (p.beta1 * p.gamma1), 1e-14);
  EXPECT_NEAR(dc.s * dc.s, p.gamma1 * p.gamma2 / (p.beta1 * p.beta2), 1e-14);
  EXPECT_DOUBLE_EQ(derived_constants(one_toeplitz(1, 0.4, 0.7, 6)).beta, 1.0);
}

TEST(Spectral, ExampleEigenvalues) {
  const auto sp = spectrum(datasets::ex5_params());
  const std::vector<double> printed{1.9913, 1.7248, 1.0, 0.77516, 0.50871};
  ASSERT_EQ(sp.size(), 5);
  for (int l = 0; l < 5; ++l) EXPECT_NEAR(sp.eigenvalues[l], printed[l], 1e-3);
  const auto dense = oracle::dense_eigenvalues(build_matrix(sp.params, true));
  for (int l = 0; l < 5; ++l) EXPECT_NEAR(sp.eigenvalues[l], dense[l], 1e-10);
  EXPECT_LE(sp.max_residual, 1e-8);
  EXPECT_LE(sp.oracle_max_deviation, 1e-8);
  EXPECT_EQ(sp.provenance[2].kind, EigenSource::Kind::Alpha1);
  EXPECT_DOUBLE_EQ(sp.eigenvalues[2], 1.0);
}

TEST(Spectral, OneToeplitzClosedForm) {
  for (int m = 2; m <= 9; ++m) {
    const double a = 1.3, b = 0.4, c = 0.6;
    const auto sp = spectrum(one_toeplitz(a, b, c, m));
    const auto orc = oracle_eigenvalues(toeplitz_bands(one_toeplitz(a, b, c, m), true));
    for (int k = 1; k <= m; ++k) {
      const double expect = a + 2 * std::sqrt(b * c) * std::cos(k * std::numbers::pi / (m + 1));
      EXPECT_NEAR(sp.eigenvalues[static_cast<std::size_t>(k - 1)], expect, 1e-12) << "m=" << m;
      EXPECT_NEAR(orc[static_cast<std::size_t>(k - 1)], expect, 1e-12) << "m=" << m;
    }
  }
}

TEST(Spectral, OrderTwoIsTheCharacteristicQuadratic) {
  ToeplitzParams p{1.2, 0.7, 0.35, 0.9, 0.4, 0.6, 2};
  const auto sp = spectrum(p);
  auto [r1, r2] = oracle::quadratic_roots(1.0, -(p.alpha1 + p.alpha2), p.alpha1 * p.alpha2 - p.beta1 * p.gamma1);
  EXPECT_NEAR(sp.eigenvalues[0], r1, 1e-13);
  EXPECT_NEAR(sp.eigenvalues[1], r2, 1e-13);

  const auto simple = spectrum(ToeplitzParams{1, 1, 0.1, 0.5, 0.1, 0.5, 2});
  EXPECT_NEAR(simple.eigenvalues[0], 1.1, 1e-13);
  EXPECT_NEAR(simple.eigenvalues[1], 0.9, 1e-13);
}

TEST(Spectral, ExampleEigenvectors) {
  const auto p = datasets::ex5_params();
  const auto sp = spectrum(p);
  const Eigen::MatrixXd printed = datasets::ex5_printed_P();
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(sp.eigenvectors(i, 0), printed(i, 0), 1e-4);

  const Eigen::VectorXd v = alpha1_eigenvector(p);
  Eigen::VectorXd expect(5);
  expect << 1, 0, -3.0 / 7.0, 0, 9.0 / 49.0;
  expect.normalize();
  EXPECT_LE((v - expect).cwiseAbs().maxCoeff(), 1e-14);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(-v(i), printed(i, 3), 1e-4);

  // Routing by lambda == alpha1 gives the same vector.
  EXPECT_LE((eigenvector(p, 1.0, 0.0) - v).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Spectral, Alpha1VectorOrderThree) {
  ToeplitzParams p{1.0, 2.0, 0.4, 0.4, 0.4, 0.4, 3};
  const Eigen::VectorXd v = alpha1_eigenvector(p);
  EXPECT_NEAR(v(0), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(v(1), 0.0, 1e-14);
  EXPECT_NEAR(v(2), -1 / std::sqrt(2.0), 1e-14);
  p.m = 4;
  EXPECT_THROW(alpha1_eigenvector(p), ConfigError);
}

TEST(Spectral, ProvenancePairsRoots) {
  for (int m : {4, 5, 8, 9}) {
    const auto sp = spectrum(ToeplitzParams{1.0, 1.6, 0.3, 0.5, 0.2, 0.45, m});
    std::map<int, int> per_zero;
    int alpha = 0;
    for (const auto& src : sp.provenance) {
      if (src.kind == EigenSource::Kind::Alpha1) {
        ++alpha;
      } else {
        EXPECT_EQ(src.kind, m % 2 ? EigenSource::Kind::PZero : EigenSource::Kind::QZero);
        ++per_zero[src.zero_index];
      }
    }
    EXPECT_EQ(alpha, m % 2);
    EXPECT_EQ(static_cast<int>(per_zero.size()), m / 2);
    for (auto [_, count] : per_zero) EXPECT_EQ(count, 2);
  }
}

TEST(Spectral, RandomDrawsMatchOracle) {
  std::mt19937_64 rng(20240601);
  int accepted = 0;
  int attempts = 0;
  while (accepted < 200) {
    ASSERT_LT(++attempts, 100000);
    const int m = 2 + static_cast<int>(rng() % 8);
    const auto p = oracle::random_params(rng, m);
    if (!check_parabolicity(p).satisfied) continue;
    ++accepted;
    const auto sp = spectrum(p);
    const Eigen::MatrixXd AT = build_matrix(p, true);
    const auto orc = oracle_eigenvalues(toeplitz_bands(p, true));
    const auto orc_A = oracle_eigenvalues(toeplitz_bands(p, false));
    double trace = 0.0, sum = 0.0;
    for (int l = 0; l < m; ++l) {
      const auto ul = static_cast<std::size_t>(l);
      EXPECT_NEAR(sp.eigenvalues[ul], orc[ul], 1e-8);
      EXPECT_NEAR(orc_A[ul], orc[ul], 1e-10);
      EXPECT_GT(sp.eigenvalues[ul], 0.0);
      const Eigen::VectorXd v = sp.eigenvectors.col(l);
      EXPECT_LE((AT * v - sp.eigenvalues[ul] * v).cwiseAbs().maxCoeff(),
                1e-8 * std::max(1.0, AT.cwiseAbs().rowwise().sum().maxCoeff()));
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      EXPECT_GT(v(0), 0.0);
      trace += AT(l, l);
      sum += sp.eigenvalues[ul];
    }
    EXPECT_LE(std::abs(trace - sum), 1e-10 * std::abs(trace));
  }
}

TEST(Spectral, OracleEdgeCases) {
  TridiagonalBands diag{{0.0, 0.0}, {3.0, 1.0, 2.0}, {0.0, 0.0}};
  const auto ev = oracle_eigenvalues(diag);
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0], 3.0, 1e-13);
  EXPECT_NEAR(ev[1], 2.0, 1e-13);
  EXPECT_NEAR(ev[2], 1.0, 1e-13);
  TridiagonalBands bad{{-1.0}, {1.0, 1.0}, {1.0}};
  EXPECT_THROW(oracle_eigenvalues(bad), ConfigError);
}
