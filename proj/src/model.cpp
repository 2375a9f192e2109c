#include <carbon/fd_engine.hpp>
#include <carbon/model.hpp>

#include <cmath>
#include <sstream>

namespace carbon {

Diffusion Diffusion::constant(double sigma) {
  return {[sigma](double, double) { return sigma; }, sigma * sigma, 0.0};
}

Diffusion Diffusion::affine_variance(double s0, double s1) {
  return {[s0, s1](double, double x) { return std::sqrt(s0 * s0 + s1 * s1 * x * x); }, s0 * s0, s1 * s1};
}

GridSpec GridSpec::from_steps(double half_width, double dx, double horizon, double dt) {
  if (!(half_width > 0 && dx > 0 && horizon > 0 && dt > 0))
    throw std::invalid_argument("GridSpec::from_steps: l, dx, T and dt must be positive");
  GridSpec g;
  g.half_width = half_width;
  g.space_points = static_cast<int>(std::lround(2.0 * half_width / dx));
  g.time_points = static_cast<int>(std::lround(horizon / dt));
  g.horizon = horizon;
  return g;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) os << (k ? "; " : "") << violations[k];
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument("invalid model: " + report.to_string()), report_(std::move(report)) {}

ValidationReport validate(const ModelParams& params, const GridSpec& grid) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (!(params.horizon > 0)) fail("T > 0");
  if (!(params.penalty > 0)) fail("pi > 0");
  if (!std::isfinite(params.initial_state)) fail("initial state must be finite");
  if (grid.space_points < 3) fail("N >= 3");
  if (grid.time_points < 1) fail("M >= 1");
  if (!(grid.half_width > 0)) fail("l > 0");
  if (!(std::abs(grid.horizon - params.horizon) <= 1e-12 * std::max(1.0, params.horizon)))
    fail("grid horizon must equal T");

  const Diffusion& d = params.diffusion;
  if (!d.sigma) fail("diffusion coefficient is not set");
  if (!(d.growth_a >= 0 && d.growth_b >= 0)) fail("growth constants a, b must be non-negative");

  if (params.penalty > 0) {
    if (auto msg = params.abatement.check(params.penalty); !msg.empty()) fail("abatement: " + msg);
  }

  if (params.jumps) {
    const JumpSpec& j = *params.jumps;
    if (!(j.intensity > 0)) fail("jump intensity lambda > 0");
    if (!j.map) fail("jump map is not set");
    try {
      const auto [k1, k2] = j.integration_terminals();
      if (!(k1 <= k2)) fail("jump quadrature terminals need K1 <= K2");
    } catch (const std::exception& e) {
      fail(std::string("jump quadrature terminals: ") + e.what());
    }
  }

  const bool grid_ok = report.ok();
  if (grid_ok && d.sigma) {
    bool positive = true, bounded = true;
    for (int n = 0; n <= grid.time_points && (positive || bounded); ++n)
      for (int i = 0; i < grid.space_points; ++i) {
        const double x = grid.x(i);
        const double s = d(grid.tau(n), x);
        // sigma = 0 keeps the scheme an M-matrix when there are no jumps.
        if (!(s > 0 || (s == 0 && !params.jumps))) positive = false;
        const double bound = d.growth_a + d.growth_b * x * x;
        if (!(s * s <= bound * (1.0 + 1e-12) + 1e-300)) bounded = false;
      }
    if (!positive) fail(params.jumps ? "sigma(t, x) > 0 on every grid node" : "sigma(t, x) >= 0 on every grid node");
    if (!bounded) fail("sigma^2(t, x) <= a + b x^2 on every grid node");
  }

  if (report.ok() && params.jumps) {
    const auto cond = grid_condition(params, grid);
    if (!cond.holds) {
      std::ostringstream os;
      os << "grid condition -Sigma* dx <= sigma*^2 / (2 lambda) fails (Sigma* = " << cond.min_jump_drift
         << ", sigma*^2 = " << cond.min_variance << ")";
      fail(os.str());
    }
  }
  return report;
}

void require_valid(const ModelParams& params, const GridSpec& grid) {
  auto report = validate(params, grid);
  if (!report.ok()) throw ValidationError(std::move(report));
}

}  // namespace carbon
