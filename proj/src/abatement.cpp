#include <carbon/abatement.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carbon {

ConvexCost ConvexCost::quadratic(double c, double cap) {
  if (!(c > 0)) throw std::invalid_argument("quadratic cost: c must be positive");
  if (!(cap > 0)) throw std::invalid_argument("quadratic cost: cap must be positive");
  return {[c](double x) { return x * x / (2.0 * c); }, cap};
}

ConvexCost ConvexCost::power(double k, double p, double cap) {
  if (!(k > 0)) throw std::invalid_argument("power cost: k must be positive");
  if (!(p > 1)) throw std::invalid_argument("power cost: exponent must exceed 1");
  if (!(cap > 0)) throw std::invalid_argument("power cost: cap must be positive");
  return {[k, p](double x) { return k * std::pow(x, p); }, cap};
}

std::string ConvexCost::check() const {
  if (!cost) return "cost function is empty";
  if (cost(0.0) != 0.0) return "C(0) must equal 0";
  const double span = std::isfinite(cap) ? cap : 10.0;
  constexpr int samples = 64;
  for (int k = 0; k < samples; ++k) {
    const double lo = span * k / samples;
    for (int w = 1; k + 2 * w <= samples; w *= 2) {
      const double hi = span * (k + 2 * w) / samples;
      const double mid = 0.5 * (lo + hi);
      if (!(cost(mid) < 0.5 * (cost(lo) + cost(hi))))
        return "C is not strictly convex on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    }
  }
  return {};
}

namespace {

// a - C'(x) by central differences, one-sided at the origin.
double slope(const ConvexCost& c, double price, double x, double h) {
  const double lo = std::max(0.0, x - h);
  const double hi = x + h;
  return price - (c.cost(hi) - c.cost(lo)) / (hi - lo);
}

}  // namespace

double reduction_from_cost(const ConvexCost& cost, double price) {
  if (!(price >= 0)) throw std::invalid_argument("reduction_from_cost: price must be non-negative");
  const double scale = std::isfinite(cost.cap) ? std::max(1.0, cost.cap) : 1.0;
  const double h = 1e-7 * scale;

  double hi = std::isfinite(cost.cap) ? cost.cap : 1.0;
  if (std::isfinite(cost.cap)) {
    if (slope(cost, price, hi, h) > 0) return cost.cap;
  } else {
    int doublings = 0;
    while (slope(cost, price, hi, h) > 0) {
      hi *= 2.0;
      if (++doublings > 1000) throw std::runtime_error("reduction_from_cost: objective has no finite maximiser");
    }
  }

  double lo = 0.0;
  if (slope(cost, price, lo, h) <= 0) return 0.0;
  // A fixed absolute tolerance keeps the dyadic bisection grid independent of
  // the price, so the result is exactly non-decreasing in the price.
  const double tol = 1e-10 * scale;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(cost, price, mid, h) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

AbatementFunction AbatementFunction::linear(double slope) {
  if (!(slope >= 0)) throw std::invalid_argument("linear abatement: slope must be non-negative");
  return AbatementFunction(Linear{slope});
}

AbatementFunction AbatementFunction::tabulated(std::vector<double> prices, std::vector<double> rates) {
  if (prices.size() != rates.size() || prices.size() < 2)
    throw std::invalid_argument("tabulated abatement: need at least two (price, rate) samples of equal length");
  for (std::size_t k = 1; k < prices.size(); ++k) {
    if (!(prices[k] > prices[k - 1])) throw std::invalid_argument("tabulated abatement: prices must increase");
    if (rates[k] < rates[k - 1]) throw std::invalid_argument("tabulated abatement: rates must be non-decreasing");
  }
  if (rates.front() < 0) throw std::invalid_argument("tabulated abatement: rates must be non-negative");
  return AbatementFunction(Tabulated{std::move(prices), std::move(rates)});
}

AbatementFunction AbatementFunction::from_cost(ConvexCost cost) {
  if (auto msg = cost.check(); !msg.empty()) throw std::invalid_argument("abatement cost: " + msg);
  return AbatementFunction(FromCost{std::move(cost)});
}

double AbatementFunction::operator()(double price) const {
  return std::visit(
      [price](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Linear>) {
          return k.slope * price;
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          if (price <= k.prices.front()) return k.rates.front();
          if (price >= k.prices.back()) return k.rates.back();
          const auto it = std::upper_bound(k.prices.begin(), k.prices.end(), price);
          const auto j = static_cast<std::size_t>(it - k.prices.begin());
          const double w = (price - k.prices[j - 1]) / (k.prices[j] - k.prices[j - 1]);
          return k.rates[j - 1] + w * (k.rates[j] - k.rates[j - 1]);
        } else if constexpr (std::is_same_v<T, FromCost>) {
          return reduction_from_cost(k.cost, std::max(price, 0.0));
        } else {
          double total = 0.0;
          for (const auto& part : k.parts) total += part(price);
          return total;
        }
      },
      kind_);
}

double AbatementFunction::linear_slope() const {
  if (const auto* lin = std::get_if<Linear>(&kind_)) return lin->slope;
  throw std::logic_error("abatement function is not linear");
}

std::string AbatementFunction::check(double max_price) const {
  constexpr int samples = 200;
  double prev = (*this)(0.0);
  if (!(prev >= 0)) return "r(0) must be non-negative";
  for (int k = 1; k <= samples; ++k) {
    const double r = (*this)(max_price * k / samples);
    if (!std::isfinite(r)) return "r is not finite on [0, pi]";
    if (r < prev) return "r is decreasing on [0, pi]";
    prev = r;
  }
  return {};
}

AbatementFunction aggregate(const std::vector<AbatementFunction>& reductions) {
  if (reductions.empty()) throw std::invalid_argument("aggregate: empty list of reduction functions");
  if (reductions.size() == 1) return reductions.front();
  if (std::all_of(reductions.begin(), reductions.end(), [](const auto& r) { return r.is_linear(); })) {
    double slope = 0.0;
    for (const auto& r : reductions) slope += r.linear_slope();
    return AbatementFunction::linear(slope);
  }
  return AbatementFunction(AbatementFunction::Sum{reductions});
}

}  // namespace carbon
