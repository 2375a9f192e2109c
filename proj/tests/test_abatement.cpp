#include <carbon/abatement.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace carbon;

TEST(ReductionFromCost, QuadraticInteriorOptimum) {
  EXPECT_NEAR(reduction_from_cost(ConvexCost::quadratic(0.02), 25.0), 0.5, 1e-8);
}

TEST(ReductionFromCost, ZeroPriceGivesZero) {
  EXPECT_EQ(reduction_from_cost(ConvexCost::quadratic(0.02), 0.0), 0.0);
  EXPECT_EQ(reduction_from_cost(ConvexCost::power(1.0, 3.0), 0.0), 0.0);
}

TEST(ReductionFromCost, ClampedAtCap) {
  EXPECT_EQ(reduction_from_cost(ConvexCost::power(1.0, 2.0, 1.0), 10.0), 1.0);
}

TEST(ReductionFromCost, NegativePriceThrows) {
  EXPECT_THROW(reduction_from_cost(ConvexCost::quadratic(1.0), -1.0), std::invalid_argument);
}

TEST(ReductionFromCost, PowerCostMatchesFirstOrderCondition) {
  // C = k x^p, C'(x) = k p x^{p-1} = a.
  const double k = 0.7, p = 2.5;
  for (double a : {0.1, 1.0, 3.0, 17.0}) {
    const double x = std::pow(a / (k * p), 1.0 / (p - 1.0));
    EXPECT_NEAR(reduction_from_cost(ConvexCost::power(k, p), a), x, 1e-7 * std::max(1.0, x)) << a;
  }
}

TEST(ReductionFromCost, QuadraticWithCapIsMinOfLinearAndCap) {
  const double c = 0.3, cap = 2.0;
  const ConvexCost cost = ConvexCost::quadratic(c, cap);
  for (int k = 0; k <= 200; ++k) {
    const double a = 20.0 * k / 200.0;
    EXPECT_NEAR(reduction_from_cost(cost, a), std::min(c * a, cap), 1e-8) << a;
  }
}

TEST(ReductionFromCost, MonotoneInPriceOnRandomConvexCosts) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uk(0.1, 3.0), up(1.2, 4.0), ua(0.0, 50.0), ucap(0.5, 10.0);
  for (int inst = 0; inst < 10; ++inst) {
    const ConvexCost cost = ConvexCost::power(uk(rng), up(rng), inst % 2 ? ucap(rng) : INFINITY);
    for (int s = 0; s < 100; ++s) {
      double a = ua(rng), b = ua(rng);
      if (a > b) std::swap(a, b);
      EXPECT_LE(reduction_from_cost(cost, a), reduction_from_cost(cost, b));
    }
  }
}

TEST(ConvexCost, CheckRejectsConcaveCost) {
  ConvexCost bad{[](double x) { return std::sqrt(x); }};
  EXPECT_FALSE(bad.check().empty());
  ConvexCost offset{[](double x) { return 1.0 + x * x; }};
  EXPECT_FALSE(offset.check().empty());
  EXPECT_TRUE(ConvexCost::quadratic(2.0).check().empty());
}

TEST(AbatementFunction, LinearEvaluation) {
  const auto r = AbatementFunction::linear(0.02);
  EXPECT_DOUBLE_EQ(r(25.0), 0.5);
  EXPECT_TRUE(r.is_linear());
  EXPECT_DOUBLE_EQ(r.linear_slope(), 0.02);
  EXPECT_THROW(AbatementFunction::linear(-1.0), std::invalid_argument);
}

TEST(AbatementFunction, TabulatedInterpolatesAndIsFlatOutside) {
  const auto r = AbatementFunction::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(r(0.5), 1.0);
  EXPECT_DOUBLE_EQ(r(2.0), 2.5);
  EXPECT_DOUBLE_EQ(r(10.0), 3.0);
  EXPECT_THROW(r.linear_slope(), std::logic_error);
}

TEST(AbatementFunction, TabulatedRejectsDecreasingRates) {
  EXPECT_THROW(AbatementFunction::tabulated({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST(Aggregate, LinearCollapses) {
  const auto r = aggregate({AbatementFunction::linear(1.0), AbatementFunction::linear(2.0)});
  ASSERT_TRUE(r.is_linear());
  EXPECT_DOUBLE_EQ(r.linear_slope(), 3.0);
  EXPECT_DOUBLE_EQ(r(2.0), 6.0);
}

TEST(Aggregate, SingleElementIsIdentity) {
  const auto one = AbatementFunction::tabulated({0.0, 1.0}, {0.0, 5.0});
  const auto r = aggregate({one});
  for (double a : {0.0, 0.3, 0.9, 4.0}) EXPECT_EQ(r(a), one(a));
}

TEST(Aggregate, TabulatedSumIsMonotonePointwiseSum) {
  const auto f = AbatementFunction::tabulated({0.0, 1.0, 2.0}, {0.0, 0.5, 3.0});
  const auto g = AbatementFunction::tabulated({0.0, 0.5, 2.5}, {1.0, 1.0, 2.0});
  const auto r = aggregate({f, g});
  double prev = -1.0;
  for (int k = 0; k < 1000; ++k) {
    const double a = 3.0 * k / 999.0;
    const double v = r(a);
    EXPECT_DOUBLE_EQ(v, f(a) + g(a));
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_TRUE(r.check(3.0).empty());
}

TEST(Aggregate, EmptyThrows) { EXPECT_THROW(aggregate({}), std::invalid_argument); }
