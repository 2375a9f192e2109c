#pragma once

#include <cmath>
#include <numbers>

namespace carbon {

// Standard normal density, distribution function and log-distribution function.
// Phi is built on std::erfc, which is accurate to a few ulp over its whole
// range, so no hand-rolled rational approximation is needed.

template <typename Scalar>
Scalar normal_pdf(Scalar x) {
  using std::exp;
  const Scalar inv_sqrt_2pi = Scalar(1) / std::sqrt(Scalar(2) * std::numbers::pi_v<Scalar>);
  return inv_sqrt_2pi * exp(-x * x / Scalar(2));
}

template <typename Scalar>
Scalar log_normal_pdf(Scalar x) {
  return -x * x / Scalar(2) - Scalar(0.5) * std::log(Scalar(2) * std::numbers::pi_v<Scalar>);
}

template <typename Scalar>
Scalar normal_cdf(Scalar x) {
  return Scalar(0.5) * std::erfc(-x / std::numbers::sqrt2_v<Scalar>);
}

/// Upper tail 1 - Phi(x), without cancellation for large x.
template <typename Scalar>
Scalar normal_survival(Scalar x) {
  return Scalar(0.5) * std::erfc(x / std::numbers::sqrt2_v<Scalar>);
}

/// log Phi(x), finite for every finite x.
///
/// erfc underflows below about x = -37.5; past x = -30 the asymptotic Mills
/// ratio series is used instead (relative truncation error < 1e-17 there).
template <typename Scalar>
Scalar log_normal_cdf(Scalar x) {
  using std::log;
  if (x > Scalar(0)) return std::log1p(-normal_survival(x));
  if (x > Scalar(-30)) return log(normal_cdf(x));
  const Scalar z2 = Scalar(1) / (x * x);
  // 1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - 945/x^10
  const Scalar series =
      Scalar(1) +
      z2 * (Scalar(-1) + z2 * (Scalar(3) + z2 * (Scalar(-15) + z2 * (Scalar(105) + z2 * Scalar(-945)))));
  return log_normal_pdf(x) - log(-x) + log(series);
}

}  // namespace carbon
