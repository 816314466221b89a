#include "reprmetrics/error.hpp"
#include "reprmetrics/normalization.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace reprmetrics;
using reprmetrics::testing::from_rows;
using reprmetrics::testing::random_case;

TEST(Normalize, CentersThenScalesRows) {
  const HiddenStateMatrix m(from_rows({{3, 0}, {-1, 0}, {1, 4}}), SourceDtype::float64, "seq");
  const NormalizedStates s = normalize(m);
  EXPECT_EQ(s.source_label(), "seq");
  ASSERT_EQ(s.centered_mean().size(), 2);
  EXPECT_DOUBLE_EQ(s.centered_mean()(0), 1.0);
  EXPECT_DOUBLE_EQ(s.centered_mean()(1), 4.0 / 3.0);
  for (Eigen::Index i = 0; i < s.data().rows(); ++i) {
    EXPECT_NEAR(s.data().row(i).norm(), 1.0, 1e-15);
  }
  // Row 0 centered is (2, -4/3); direction is preserved.
  EXPECT_NEAR(s.data()(0, 1) / s.data()(0, 0), -2.0 / 3.0, 1e-15);
}

TEST(Normalize, SkipCenteringKeepsDirection) {
  const HiddenStateMatrix m(from_rows({{3, 4}, {0, 2}}));
  const NormalizedStates s = normalize(m, {.skip_centering = true});
  EXPECT_DOUBLE_EQ(s.data()(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(s.data()(0, 1), 0.8);
  EXPECT_DOUBLE_EQ(s.data()(1, 1), 1.0);
  EXPECT_EQ(s.centered_mean(), Vector::Zero(2));
}

TEST(Normalize, ConstantRowsAreDegenerate) {
  const HiddenStateMatrix m(from_rows({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}));
  try {
    normalize(m);
    FAIL();
  } catch (const ZeroVectorError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVectorAfterCentering);
    EXPECT_EQ(e.row(), 0u);
  }
}

TEST(Normalize, SingleTokenIsDegenerate) {
  const HiddenStateMatrix m(from_rows({{5, -1, 2}}));
  EXPECT_THROW(normalize(m), ZeroVectorError);
}

TEST(Normalize, ReportsTheZeroRow) {
  // Mean is (1, 1); only row 2 centers to zero.
  const HiddenStateMatrix m(from_rows({{2, 1}, {0, 1}, {1, 1}}));
  try {
    normalize(m);
    FAIL();
  } catch (const ZeroVectorError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(Normalize, ThresholdIsInclusive) {
  EXPECT_THROW(l2_normalize_rows(from_rows({{kZeroRowEpsilon, 0.0}})), ZeroVectorError);
  EXPECT_NO_THROW(l2_normalize_rows(from_rows({{2.0 * kZeroRowEpsilon, 0.0}})));
}

TEST(NormalizeProperty, UnitRowsAndIdempotence) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_case(rng);
    const NormalizedStates s = normalize(HiddenStateMatrix(c.m));
    const Vector norms = s.data().rowwise().norm();
    EXPECT_LT((norms.array() - 1.0).abs().maxCoeff(), 1e-12);

    const NormalizedStates again = l2_normalize_rows(s.data());
    EXPECT_LT((again.data() - s.data()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(NormalizeProperty, ScaleAndTranslationInvariance) {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> g(0.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_case(rng);
    const NormalizedStates base = normalize(HiddenStateMatrix(c.m));
    for (double scale : {1e-3, 1.0, 1e3}) {
      const NormalizedStates scaled = normalize(HiddenStateMatrix(Matrix(c.m * scale)));
      EXPECT_LT((scaled.data() - base.data()).cwiseAbs().maxCoeff(), 1e-9) << scale;
    }
    Eigen::RowVectorXd shift(static_cast<Eigen::Index>(c.d));
    for (Eigen::Index j = 0; j < shift.size(); ++j) shift(j) = g(rng);
    const NormalizedStates shifted = normalize(HiddenStateMatrix(Matrix(c.m.rowwise() + shift)));
    EXPECT_LT((shifted.data() - base.data()).cwiseAbs().maxCoeff(), 1e-9);
  }
}
