#include <carbon/jumps.hpp>
#include <carbon/normal.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carbon {

JumpDistribution JumpDistribution::normal(double mean, double stddev) {
  if (!(stddev > 0) || !std::isfinite(mean)) throw std::invalid_argument("normal jumps: need finite mean and stddev > 0");
  return JumpDistribution(Normal{mean, stddev});
}

JumpDistribution JumpDistribution::point_mass(double at) {
  if (!std::isfinite(at)) throw std::invalid_argument("point-mass jumps: location must be finite");
  return JumpDistribution(PointMass{at});
}

JumpDistribution JumpDistribution::tabulated(std::vector<double> points, std::vector<double> density) {
  if (points.size() != density.size() || points.size() < 2)
    throw std::invalid_argument("tabulated jumps: need at least two (point, density) samples of equal length");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (density[k] < 0) throw std::invalid_argument("tabulated jumps: density must be non-negative");
    if (k > 0 && !(points[k] > points[k - 1])) throw std::invalid_argument("tabulated jumps: points must increase");
  }
  std::vector<double> cumulative(points.size(), 0.0);
  for (std::size_t k = 1; k < points.size(); ++k)
    cumulative[k] = cumulative[k - 1] + 0.5 * (density[k] + density[k - 1]) * (points[k] - points[k - 1]);
  const double total = cumulative.back();
  if (!(total > 0)) throw std::invalid_argument("tabulated jumps: density has zero mass");
  for (auto& d : density) d /= total;
  for (auto& c : cumulative) c /= total;
  return JumpDistribution(Tabulated{std::move(points), std::move(density), std::move(cumulative)});
}

namespace {

// Mass of a piecewise-linear density from points[k] to y, y in [points[k], points[k+1]].
double partial_segment(const JumpDistribution::Tabulated& t, std::size_t k, double y) {
  const double h = t.points[k + 1] - t.points[k];
  const double u = y - t.points[k];
  const double slope = (t.density[k + 1] - t.density[k]) / h;
  return t.density[k] * u + 0.5 * slope * u * u;
}

double tabulated_cdf(const JumpDistribution::Tabulated& t, double y) {
  if (y <= t.points.front()) return 0.0;
  if (y >= t.points.back()) return 1.0;
  const auto k = static_cast<std::size_t>(std::upper_bound(t.points.begin(), t.points.end(), y) - t.points.begin()) - 1;
  return std::min(1.0, t.cumulative[k] + partial_segment(t, k, y));
}

}  // namespace

double JumpDistribution::cdf(double y) const {
  return std::visit(
      [y](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Normal>) return normal_cdf((y - k.mean) / k.stddev);
        else if constexpr (std::is_same_v<T, PointMass>) return y >= k.at ? 1.0 : 0.0;
        else return tabulated_cdf(k, y);
      },
      kind_);
}

double JumpDistribution::survival(double y) const {
  if (const auto* n = std::get_if<Normal>(&kind_)) return normal_survival((y - n->mean) / n->stddev);
  return 1.0 - cdf(y);
}

double JumpDistribution::mass(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  if (lo >= 0.0) return std::max(0.0, survival(lo) - survival(hi));
  if (hi <= 0.0) return std::max(0.0, cdf(hi) - cdf(lo));
  return std::max(0.0, 1.0 - cdf(lo) - survival(hi));
}

double JumpDistribution::quantile(double p) const {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("quantile: p must lie in (0, 1)");
  if (const auto* pm = std::get_if<PointMass>(&kind_)) return pm->at;
  if (const auto* n = std::get_if<Normal>(&kind_)) {
    // Solve in the lower tail and reflect, so quantile(p) = -quantile(1 - p) for mean 0.
    const double tail = std::min(p, 1.0 - p);
    double lo = -40.0, hi = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (normal_cdf(mid) >= tail)
        hi = mid;
      else
        lo = mid;
    }
    return p <= 0.5 ? n->mean + n->stddev * hi : n->mean - n->stddev * hi;
  }
  const auto& t = std::get<Tabulated>(kind_);
  double lo = t.points.front();
  double hi = t.points.back();
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double JumpDistribution::mean() const {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Normal>) return k.mean;
        else if constexpr (std::is_same_v<T, PointMass>) return k.at;
        else {
          // Exact for a piecewise-linear density.
          double m = 0.0;
          for (std::size_t i = 0; i + 1 < k.points.size(); ++i) {
            const double a = k.points[i], b = k.points[i + 1], fa = k.density[i], fb = k.density[i + 1];
            m += (b - a) * (fa * (2 * a + b) + fb * (a + 2 * b)) / 6.0;
          }
          return m;
        }
      },
      kind_);
}

double JumpDistribution::second_moment() const {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Normal>) return k.mean * k.mean + k.stddev * k.stddev;
        else if constexpr (std::is_same_v<T, PointMass>) return k.at * k.at;
        else {
          double m = 0.0;
          for (std::size_t i = 0; i + 1 < k.points.size(); ++i) {
            const double a = k.points[i], b = k.points[i + 1], fa = k.density[i], fb = k.density[i + 1];
            // integral of y^2 (fa + (fb - fa)(y - a)/(b - a)) over [a, b]
            m += (b - a) * (fa * (3 * a * a + 2 * a * b + b * b) + fb * (a * a + 2 * a * b + 3 * b * b)) / 12.0;
          }
          return m;
        }
      },
      kind_);
}

double JumpDistribution::sample(std::mt19937_64& rng) const {
  if (const auto* n = std::get_if<Normal>(&kind_)) return n->mean + n->stddev * std::normal_distribution<double>()(rng);
  if (const auto* pm = std::get_if<PointMass>(&kind_)) return pm->at;
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  while (u <= 0.0) u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return quantile(u);
}

std::pair<double, double> JumpSpec::integration_terminals() const {
  if (terminals) return *terminals;
  if (!(tail_mass > 0 && tail_mass < 0.5)) throw std::invalid_argument("jump tail mass must lie in (0, 0.5)");
  return {distribution.quantile(tail_mass), distribution.quantile(1.0 - tail_mass)};
}

}  // namespace carbon
