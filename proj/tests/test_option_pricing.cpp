#include "fixtures.hpp"

#include <carbon/fd_engine.hpp>
#include <carbon/option_pricing.hpp>

#include <gtest/gtest.h>

using namespace carbon;
using namespace carbon::testing;

namespace {

struct DiffusionCase {
  ModelParams params = diffusion_model();
  GridSpec grid = grid_for(params, 20.0, 0.02, 100);
  PriceSurface alpha = solve_surface(params, grid);
};

const DiffusionCase& diffusion_case() {
  static const DiffusionCase c;
  return c;
}

}  // namespace

TEST(CallSurface, TerminalRowIsPayoff) {
  const auto& c = diffusion_case();
  const CallSurface call = solve_call_surface(c.alpha, {25.0, 1.0, 0.0}, c.params);
  const int m = call.maturity_level();
  EXPECT_EQ(m, 50);
  for (int i = 0; i < c.grid.space_points; ++i)
    EXPECT_EQ(call.values.node(m, i), std::max(c.alpha.node(m, i) - 25.0, 0.0));
}

TEST(CallSurface, DigitalMaturityIsFractionOfAllowance) {
  const auto& c = diffusion_case();
  const CallSurface call = solve_call_surface(c.alpha, {25.0, 2.0, 0.0}, c.params);
  const GridSpec& g = c.grid;
  double err = 0.0;
  for (int n = 0; n <= g.time_points; ++n)
    for (int i = 0; i < g.space_points; ++i)
      err = std::max(err, std::abs(call.values.node(n, i) - 0.75 * c.alpha.node(n, i)));
  EXPECT_LE(err, 1.0);
}

TEST(CallSurface, ZeroStrikeIsTheAllowance) {
  const auto& c = diffusion_case();
  const CallSurface call = solve_call_surface(c.alpha, {0.0, 1.3, 0.0}, c.params);
  for (int n = call.maturity_level(); n <= c.grid.time_points; n += 5)
    for (int i = 0; i < c.grid.space_points; i += 17)
      EXPECT_NEAR(call.values.node(n, i), c.alpha.node(n, i), 1.0);
}

TEST(CallSurface, ZeroStrikeIsTheAllowanceWithJumps) {
  const auto p = jump_model();
  const PriceSurface alpha = solve_surface(p, grid_for(p, 20.0, 0.02, 50));
  const CallSurface call = solve_call_surface(alpha, {0.0, 0.6, 0.0}, p);
  double err = 0.0;
  for (int n = call.maturity_level(); n <= 50; ++n)
    for (int i = 0; i < alpha.grid().space_points; ++i)
      err = std::max(err, std::abs(call.values.node(n, i) - alpha.node(n, i)));
  EXPECT_LE(err, 1e-2);
}

TEST(PriceCall, AtTheMoneyFullMaturity) {
  const auto& c = diffusion_case();
  const CallSurface call = solve_call_surface(c.alpha, {25.0, 2.0, 0.0}, c.params);
  EXPECT_NEAR(price_call(c.alpha, call, 0.0, 25.0), 18.75, 0.2);
}

TEST(PriceCall, ExpiringAtTheMoneyIsZero) {
  const auto& c = diffusion_case();
  const CallSurface call = solve_call_surface(c.alpha, {25.0, 0.0, 0.0}, c.params);
  EXPECT_EQ(price_call(c.alpha, call, 0.0, 25.0), 0.0);
  EXPECT_EQ(price_call(c.alpha, call, 0.0, 40.0), 15.0);
}

TEST(PriceCall, StrikeAtPenaltyIsWorthless) {
  const auto& c = diffusion_case();
  const CallSurface call = solve_call_surface(c.alpha, {100.0, 1.5, 0.0}, c.params);
  EXPECT_EQ(price_call(c.alpha, call, 0.0, 60.0), 0.0);
}

TEST(PriceCall, NonIncreasingInStrike) {
  const auto& c = diffusion_case();
  double prev = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const double K = 100.0 * k / 19.0;
    const double v = price_call(c.alpha, solve_call_surface(c.alpha, {K, 1.2, 0.0}, c.params), 0.0, 30.0);
    EXPECT_LE(v, prev) << K;
    prev = v;
  }
}

TEST(PriceCall, NonDecreasingInMaturityWithBounds) {
  const auto& c = diffusion_case();
  const double K = 25.0, a = 25.0;
  double prev = -1.0;
  for (int k = 0; k <= 10; ++k) {
    const double tau = 0.2 * k;
    const double v = price_call(c.alpha, solve_call_surface(c.alpha, {K, tau, 0.0}, c.params), 0.0, a);
    EXPECT_GE(v, prev) << tau;
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, (100.0 - K) * a / 100.0 + 1.0);
    prev = v;
  }
  EXPECT_NEAR(prev, 18.75, 0.2);
}

TEST(CallSpec, Validation) {
  EXPECT_THROW(CallSpec({-1.0, 1.0, 0.0}).validate(100.0, 2.0), std::invalid_argument);
  EXPECT_THROW(CallSpec({10.0, 3.0, 0.0}).validate(100.0, 2.0), std::invalid_argument);
  EXPECT_THROW(CallSpec({10.0, 1.0, 1.5}).validate(100.0, 2.0), std::invalid_argument);
  EXPECT_NO_THROW(CallSpec({10.0, 1.0, 1.0}).validate(100.0, 2.0));
}
