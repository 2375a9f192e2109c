#pragma once

// Closed-form allowance price for linear abatement r(a) = c a and constant
// volatility. The nonlinear pricing equation reduces to Burgers' equation,
// which the Hopf-Cole substitution maps onto the backward heat equation
//
//   v_t + (sigma^2 / 2) v_xx = 0,   v(T, x) = 1{x < 0} + 1{x >= 0} exp(-c pi x / sigma^2),
//   alpha = -(sigma^2 / c) v_x / v.
//
// Products Phi(.) * exp(.) are formed in the log domain so that the functions
// stay finite for |x| in the millions.

#include <carbon/normal.hpp>

#include <cmath>
#include <stdexcept>

namespace carbon {

template <typename Scalar>
struct HopfColeParams {
  Scalar horizon;  // T
  Scalar sigma;    // constant volatility
  Scalar slope;    // c in r(a) = c a
  Scalar penalty;  // pi

  void validate() const {
    if (!(horizon > 0 && sigma > 0 && slope > 0 && penalty > 0))
      throw std::invalid_argument("HopfColeParams: T, sigma, c and pi must all be strictly positive");
  }
};

namespace detail {

template <typename Scalar>
struct HeatTerms {
  Scalar s;          // sigma sqrt(T - t)
  Scalar u1;         // -x / s
  Scalar u2;         // (x - c pi (T - t)) / s
  Scalar log_exp;    // -c pi x / sigma^2 + pi^2 c^2 (T - t) / (2 sigma^2)
};

template <typename Scalar>
HeatTerms<Scalar> heat_terms(const HopfColeParams<Scalar>& p, Scalar t, Scalar x) {
  p.validate();
  if (!(t >= 0 && t < p.horizon))
    throw std::domain_error("Hopf-Cole closed form requires 0 <= t < T");
  const Scalar ttm = p.horizon - t;
  const Scalar s = p.sigma * std::sqrt(ttm);
  const Scalar cpi = p.slope * p.penalty;
  const Scalar var = p.sigma * p.sigma;
  return {s, -x / s, (x - cpi * ttm) / s, -cpi * x / var + cpi * cpi * ttm / (Scalar(2) * var)};
}

template <typename Scalar>
Scalar log_add_exp(Scalar a, Scalar b) {
  const Scalar hi = a > b ? a : b;
  const Scalar lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace detail

/// log v(t, x); finite wherever v itself would underflow.
template <typename Scalar>
Scalar log_heat_v(const HopfColeParams<Scalar>& p, Scalar t, Scalar x) {
  const auto h = detail::heat_terms(p, t, x);
  return detail::log_add_exp(log_normal_cdf(h.u1), log_normal_cdf(h.u2) + h.log_exp);
}

/// Solution of the heat equation with the transformed digital terminal data.
template <typename Scalar>
Scalar heat_v(const HopfColeParams<Scalar>& p, Scalar t, Scalar x) {
  return std::exp(log_heat_v(p, t, x));
}

/// d v / d x, evaluated term by term as
///   -phi(u1)/s + phi(u2) e^{E}/s - (c pi / sigma^2) Phi(u2) e^{E}.
template <typename Scalar>
Scalar heat_v_dx(const HopfColeParams<Scalar>& p, Scalar t, Scalar x) {
  const auto h = detail::heat_terms(p, t, x);
  const Scalar k = p.slope * p.penalty / (p.sigma * p.sigma);
  const Scalar first = -std::exp(log_normal_pdf(h.u1)) / h.s;
  const Scalar second = std::exp(log_normal_pdf(h.u2) + h.log_exp) / h.s;
  const Scalar third = -k * std::exp(log_normal_cdf(h.u2) + h.log_exp);
  return first + second + third;
}

/// alpha(t, x) = -(sigma^2 / c) v_x / v.
///
/// The two density terms of v_x cancel identically (phi(u2) e^{E} = phi(u1)),
/// which leaves alpha = pi / (1 + Phi(u1) / (Phi(u2) e^{E})). That logistic
/// form is evaluated from log quantities and stays inside (0, pi).
template <typename Scalar>
Scalar hopf_cole_alpha(const HopfColeParams<Scalar>& p, Scalar t, Scalar x) {
  const auto h = detail::heat_terms(p, t, x);
  const Scalar log_ratio = log_normal_cdf(h.u2) + h.log_exp - log_normal_cdf(h.u1);
  if (log_ratio >= 0) return p.penalty / (Scalar(1) + std::exp(-log_ratio));
  const Scalar e = std::exp(log_ratio);
  return p.penalty * e / (Scalar(1) + e);
}

/// Price surface with no abatement (r = 0): pi Phi(x / (sigma sqrt(T - t))).
template <typename Scalar>
Scalar digital_alpha_no_abatement(Scalar sigma, Scalar penalty, Scalar horizon, Scalar t, Scalar x) {
  if (!(sigma > 0)) throw std::invalid_argument("digital_alpha_no_abatement: sigma must be positive");
  if (!(t >= 0 && t < horizon)) throw std::domain_error("digital_alpha_no_abatement requires 0 <= t < T");
  return penalty * normal_cdf(x / (sigma * std::sqrt(horizon - t)));
}

}  // namespace carbon
