#include <carbon/option_pricing.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carbon {

void CallSpec::validate(double penalty, double horizon) const {
  if (!(strike >= 0 && strike <= penalty)) throw std::invalid_argument("CallSpec: strike must lie in [0, pi]");
  if (!(maturity >= 0 && maturity <= horizon + 1e-12)) throw std::invalid_argument("CallSpec: maturity must lie in [0, T]");
  if (!(valuation_time >= 0 && valuation_time <= maturity + 1e-12))
    throw std::invalid_argument("CallSpec: need 0 <= t <= maturity");
}

CallSurface solve_call_surface(const PriceSurface& alpha, const CallSpec& spec, const ModelParams& params) {
  spec.validate(params.penalty, params.horizon);
  const GridSpec& grid = alpha.grid();
  require_valid(params, grid);
  if (alpha.first_level() != 0 || alpha.last_level() != grid.time_points)
    throw std::invalid_argument("solve_call_surface: alpha surface must cover [0, T]");

  const int N = grid.space_points;
  const int M = grid.time_points;
  const int first = alpha.level_for_time(spec.maturity);
  const double cap = params.penalty - spec.strike;

  GridSurface<double>::Matrix f(M - first + 1, N);
  f.row(0) = (alpha.level(first).array() - spec.strike).max(0.0).matrix();

  const StepAssembler assembler(params, grid);
  const double slack = range_slack(cap);
  std::size_t clamped = 0;
  Eigen::VectorXd current = f.row(0).transpose();
  for (int n = first; n < M; ++n) {
    const Eigen::VectorXd drift = alpha.level(n).transpose();
    const AssembledStep step = assembler.assemble(n, drift, current, cap);
    Eigen::VectorXd next = thomas_solve(step.system);
    for (Eigen::Index i = 0; i < next.size(); ++i) {
      const double v = next(i);
      if (!(v >= -slack && v <= cap + slack)) throw MaxPrincipleError("call value leaves [0, pi - K]");
      if (v < 0.0 || v > cap) {
        next(i) = std::clamp(v, 0.0, cap);
        ++clamped;
      }
    }
    f.row(n + 1 - first) = next.transpose();
    current = std::move(next);
  }
  CallSurface out{spec, GridSurface<double>(grid, cap, first, std::move(f))};
  out.values.clamped_values = clamped;
  return out;
}

double price_call(const PriceSurface& alpha, const CallSurface& call, double t, double price) {
  if (t > call.spec.maturity + 1e-12) throw std::invalid_argument("price_call: valuation time is after maturity");
  const Inversion inv = invert_alpha(alpha, t, price);
  if (inv.level <= call.maturity_level()) return std::max(price - call.spec.strike, 0.0);
  return call.at(t, inv.x);
}

}  // namespace carbon
