#pragma once

#include <carbon/model.hpp>

namespace carbon::testing {

/// T = 2, sigma = 4, r(a) = 0.02 a, pi = 100, no jumps.
inline ModelParams diffusion_model() {
  ModelParams p;
  p.horizon = 2.0;
  p.penalty = 100.0;
  p.diffusion = Diffusion::constant(4.0);
  p.abatement = AbatementFunction::linear(0.02);
  return p;
}

/// T = 1, pi = 1, sigma = 1, r(a) = a, lambda = 1, nu = N(0, 1), a(tau, x, y) = y.
inline ModelParams jump_model() {
  ModelParams p;
  p.horizon = 1.0;
  p.penalty = 1.0;
  p.diffusion = Diffusion::constant(1.0);
  p.abatement = AbatementFunction::linear(1.0);
  p.jumps = JumpSpec{};
  return p;
}

inline GridSpec grid_for(const ModelParams& p, double l, double dx, int M) {
  GridSpec g = GridSpec::from_steps(l, dx, p.horizon, p.horizon / M);
  g.time_points = M;
  return g;
}

}  // namespace carbon::testing
