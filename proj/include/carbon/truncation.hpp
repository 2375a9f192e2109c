#pragma once

// Spatial truncation radius from second-moment bounds on the state process.
//
// With sigma^2 <= a + b x^2, jump second moment E Y^2 and maximal reduction
// rate r(pi), Gronwall gives E X_t^2 <= kappa_t and E M_t^2 <= zeta_t =
// kappa_t + r(pi)^2 t^2 for the martingale part M. Kolmogorov-Doob then bounds
//   P(inf X <= -l) <= kappa_T / l^2,   P(sup X >= l) <= zeta_T / l^2.

#include <carbon/model.hpp>

namespace carbon {

struct TruncationInputs {
  double growth_a = 0.0;
  double growth_b = 0.0;
  double intensity = 0.0;           // lambda
  double jump_second_moment = 0.0;  // E Y^2
  double max_reduction = 0.0;       // r(pi)
  double horizon = 1.0;             // T
  double eps_lower = 0.05;          // eps_1
  double eps_upper = 0.05;          // eps_2
  double initial_state = 0.0;

  static TruncationInputs from_model(const ModelParams& params, double eps_lower, double eps_upper);
  void validate() const;
};

/// Gronwall bound on E X_t^2. The b -> 0 limit (a + lambda E Y^2) t + r(pi)^2 t^2
/// is reached continuously: the formula is evaluated as
///   A expm1(bt) / b + 2 R (e^{bt} - 1 - bt) / b^2,
/// with a series for the second quotient when bt is small.
double kappa(const TruncationInputs& in, double t);

/// kappa_t + r(pi)^2 t^2.
double zeta(const TruncationInputs& in, double t);

struct TruncationReport {
  double kappa_T;
  double zeta_T;
  double radius;
  double eps_lower;
  double eps_upper;
};

/// Smallest l with kappa_T / l^2 <= eps_1 and zeta_T / l^2 <= eps_2, shifted by
/// |X_0| for a non-zero start.
double truncation_radius(const TruncationInputs& in);
TruncationReport truncation_report(const TruncationInputs& in);

}  // namespace carbon
