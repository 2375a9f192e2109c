#pragma once

// European calls on the allowance price. With A_t = alpha(t, X_t) the call
// value is f(t, X_t), where f solves the linear equation obtained from the
// allowance equation by freezing the advection coefficient at r(alpha(t, x)),
// with terminal data f(tau_opt, x) = (alpha(tau_opt, x) - K)^+.
//
// With jumps, the jump generator of the state process is applied linearly to
// f; ghost values are pi - K for x >= l and 0 for x <= -l.

#include <carbon/fd_engine.hpp>
#include <carbon/model.hpp>
#include <carbon/surface.hpp>

namespace carbon {

struct CallSpec {
  double strike = 0.0;          // K, 0 <= K <= pi
  double maturity = 0.0;        // tau_opt in (0, T]
  double valuation_time = 0.0;  // t in [0, tau_opt]

  void validate(double penalty, double horizon) const;
};

struct CallSurface {
  CallSpec spec;
  /// Rows cover the alpha time levels from the maturity level down to t = 0.
  GridSurface<double> values;

  int maturity_level() const { return values.first_level(); }
  double at(double t, double x) const { return values.at(t, x); }
};

/// Solved on the alpha grid; the maturity snaps to the nearest alpha time level.
CallSurface solve_call_surface(const PriceSurface& alpha, const CallSpec& spec, const ModelParams& params);

/// Price at time t given spot allowance price a: invert alpha(t, x) = a, then
/// read the call surface at (t, x). On the maturity level the payoff
/// (a - K)^+ is returned exactly.
double price_call(const PriceSurface& alpha, const CallSurface& call, double t, double price);

}  // namespace carbon
