#include "fixtures.hpp"

#include <carbon/fd_engine.hpp>
#include <carbon/model.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace carbon;
using namespace carbon::testing;

namespace {

bool mentions(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r.violations)
    if (v.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Validate, JumpExampleIsValid) {
  const auto p = jump_model();
  const auto r = validate(p, grid_for(p, 30.0, 0.02, 50));
  EXPECT_TRUE(r.ok()) << r.to_string();
}

TEST(Validate, DiffusionExampleIsValid) {
  const auto p = diffusion_model();
  EXPECT_TRUE(validate(p, grid_for(p, 20.0, 0.02, 100)).ok());
}

TEST(Validate, DegenerateGrid) {
  const auto p = diffusion_model();
  GridSpec g = grid_for(p, 20.0, 0.02, 100);
  g.space_points = 2;
  const auto r = validate(p, g);
  EXPECT_TRUE(mentions(r, "N >= 3")) << r.to_string();
  EXPECT_THROW(require_valid(p, g), ValidationError);
}

TEST(Validate, CollectsEveryViolation) {
  ModelParams p = diffusion_model();
  p.horizon = -1.0;
  p.penalty = 0.0;
  GridSpec g;
  g.space_points = 2;
  g.time_points = 0;
  g.half_width = -1.0;
  EXPECT_GE(validate(p, g).violations.size(), 5u);
}

TEST(Validate, GrowthBoundIsChecked) {
  ModelParams p = diffusion_model();
  p.diffusion = Diffusion::affine_variance(1.0, 0.5);
  const GridSpec g = grid_for(p, 20.0, 0.02, 100);
  EXPECT_TRUE(validate(p, g).ok());
  p.diffusion.growth_b = 0.0;
  EXPECT_FALSE(validate(p, g).ok());
}

TEST(Validate, NonPositiveVolatilityWithJumpsRejected) {
  ModelParams p = jump_model();
  p.diffusion = Diffusion::constant(0.0);
  EXPECT_FALSE(validate(p, grid_for(p, 20.0, 0.02, 50)).ok());
}

TEST(Validate, NoJumpsMakesGridConditionVacuous) {
  const auto p = diffusion_model();
  EXPECT_TRUE(check_grid_condition(p, grid_for(p, 20.0, 0.02, 100)));
}

TEST(GridSpec, NodeArithmetic) {
  const GridSpec g = GridSpec::from_steps(20.0, 0.02, 2.0, 0.02);
  EXPECT_EQ(g.space_points, 2000);
  EXPECT_EQ(g.time_points, 100);
  EXPECT_EQ(g.x(1000), 0.0);
  EXPECT_EQ(g.x(0), -20.0);
  EXPECT_EQ(g.tau(g.time_points), 2.0);
  for (int i = 0; i + 1 < g.space_points; ++i) {
    ASSERT_LT(g.x(i), g.x(i + 1));
    ASSERT_LE(std::abs(g.x(i + 1) - g.x(i) - g.dx()), std::ldexp(1.0, -48) * g.half_width);
  }
  EXPECT_TRUE(g.nonnegative(1000));
  EXPECT_FALSE(g.nonnegative(999));
}
