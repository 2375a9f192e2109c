#pragma once

#include <carbon/abatement.hpp>
#include <carbon/jumps.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carbon {

/// Volatility sigma(t, x) of the expected-shortfall martingale together with
/// declared constants of the growth bound sigma^2(t, x) <= a + b x^2.
struct Diffusion {
  std::function<double(double t, double x)> sigma;
  double growth_a = 0.0;
  double growth_b = 0.0;

  double operator()(double t, double x) const { return sigma(t, x); }

  static Diffusion constant(double sigma);
  /// sigma(t, x) = sqrt(s0^2 + s1^2 x^2), growth constants (s0^2, s1^2).
  static Diffusion affine_variance(double s0, double s1);
};

/// Uniform grid on [-l, l) x [0, T]: x_i = -l + i dx for i = 0..N-1 and
/// tau_n = n dt for n = 0..M, with dx = 2l/N and dt = T/M.
struct GridSpec {
  double half_width = 1.0;  // l
  int space_points = 3;     // N
  int time_points = 1;      // M
  double horizon = 1.0;     // T

  /// Builds N = round(2l / dx), M = round(T / dt).
  static GridSpec from_steps(double half_width, double dx, double horizon, double dt);

  double dx() const { return 2.0 * half_width / space_points; }
  double dt() const { return horizon / time_points; }
  /// l (2i - N) / N, which is exactly 0 at the centre node for even N.
  double x(int i) const { return half_width * (2.0 * i - space_points) / space_points; }
  double tau(int n) const { return n == time_points ? horizon : horizon * n / time_points; }
  /// Whether x_i >= 0, decided in integer arithmetic.
  bool nonnegative(int i) const { return 2 * i >= space_points; }
};

struct ModelParams {
  double horizon = 1.0;  // T
  double penalty = 1.0;  // pi
  Diffusion diffusion = Diffusion::constant(1.0);
  AbatementFunction abatement = AbatementFunction::linear(1.0);
  std::optional<JumpSpec> jumps;
  double initial_state = 0.0;

  double intensity() const { return jumps ? jumps->intensity : 0.0; }
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Collects every violated invariant of (params, grid), including the
/// discrete maximum-principle grid condition when jumps are present.
ValidationReport validate(const ModelParams& params, const GridSpec& grid);

/// validate() and throw ValidationError on any violation.
void require_valid(const ModelParams& params, const GridSpec& grid);

}  // namespace carbon
