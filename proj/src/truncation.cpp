#include <carbon/truncation.hpp>

#include <cmath>
#include <stdexcept>

namespace carbon {

TruncationInputs TruncationInputs::from_model(const ModelParams& params, double eps_lower, double eps_upper) {
  TruncationInputs in;
  in.growth_a = params.diffusion.growth_a;
  in.growth_b = params.diffusion.growth_b;
  in.intensity = params.intensity();
  in.jump_second_moment = params.jumps ? params.jumps->distribution.second_moment() : 0.0;
  in.max_reduction = params.abatement(params.penalty);
  in.horizon = params.horizon;
  in.eps_lower = eps_lower;
  in.eps_upper = eps_upper;
  in.initial_state = params.initial_state;
  in.validate();
  return in;
}

void TruncationInputs::validate() const {
  if (!(growth_a >= 0 && growth_b >= 0 && intensity >= 0 && jump_second_moment >= 0 && max_reduction >= 0 &&
        horizon >= 0))
    throw std::invalid_argument("truncation inputs must be non-negative");
  if (!(eps_lower > 0 && eps_lower < 1 && eps_upper > 0 && eps_upper < 1))
    throw std::invalid_argument("truncation tolerances must lie in (0, 1)");
}

double kappa(const TruncationInputs& in, double t) {
  if (!(t >= 0)) throw std::invalid_argument("kappa: t must be non-negative");
  const double A = in.growth_a + in.intensity * in.jump_second_moment;
  const double R = in.max_reduction * in.max_reduction;
  const double b = in.growth_b;
  if (b == 0.0) return A * t + R * t * t;

  const double bt = b * t;
  const double first = A * std::expm1(bt) / b;
  double second;
  if (std::abs(bt) < 1e-2) {
    // (e^{x} - 1 - x) / b^2 = t^2 (1/2 + x/6 + x^2/24 + x^3/120 + x^4/720 + x^5/5040)
    const double x = bt;
    second = t * t * (0.5 + x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x * (1.0 / 720 + x / 5040)))));
  } else {
    second = (std::expm1(bt) - bt) / (b * b);
  }
  return first + 2.0 * R * second;
}

double zeta(const TruncationInputs& in, double t) {
  return kappa(in, t) + in.max_reduction * in.max_reduction * t * t;
}

double truncation_radius(const TruncationInputs& in) { return truncation_report(in).radius; }

TruncationReport truncation_report(const TruncationInputs& in) {
  in.validate();
  TruncationReport rep{kappa(in, in.horizon), zeta(in, in.horizon), 0.0, in.eps_lower, in.eps_upper};
  rep.radius = std::max(std::sqrt(rep.kappa_T / in.eps_lower), std::sqrt(rep.zeta_T / in.eps_upper)) +
               std::abs(in.initial_state);
  return rep;
}

}  // namespace carbon
