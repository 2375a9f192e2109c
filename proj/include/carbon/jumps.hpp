#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

namespace carbon {

/// Jump-size distribution nu. Quadrature weights are taken from the
/// distribution function, so every kind exposes cdf/survival.
class JumpDistribution {
 public:
  struct Normal {
    double mean;
    double stddev;
  };
  struct PointMass {
    double at;
  };
  /// Piecewise-linear density through (points, density), normalised to unit mass.
  struct Tabulated {
    std::vector<double> points;
    std::vector<double> density;
    std::vector<double> cumulative;  // mass up to each point
  };
  using Kind = std::variant<Normal, PointMass, Tabulated>;

  static JumpDistribution normal(double mean, double stddev);
  static JumpDistribution point_mass(double at);
  static JumpDistribution tabulated(std::vector<double> points, std::vector<double> density);

  double cdf(double y) const;
  double survival(double y) const;
  /// nu((lo, hi]). Cells on the positive side are differenced through the
  /// survival function, so a distribution symmetric about 0 yields bitwise
  /// symmetric cell masses.
  double mass(double lo, double hi) const;
  /// Smallest y with cdf(y) >= p.
  double quantile(double p) const;
  double mean() const;
  double second_moment() const;
  double sample(std::mt19937_64& rng) const;

  const Kind& kind() const { return kind_; }

 private:
  explicit JumpDistribution(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Jump displacement a(tau, x, y) applied to the state when a jump of size y occurs.
using JumpMap = std::function<double(double tau, double x, double y)>;

struct JumpSpec {
  double intensity = 1.0;  // lambda
  JumpDistribution distribution = JumpDistribution::normal(0.0, 1.0);
  JumpMap map = [](double, double, double y) { return y; };
  bool map_is_identity = true;
  /// Integration terminals [K1, K2]; defaults to the tail_mass quantiles of nu.
  std::optional<std::pair<double, double>> terminals;
  double tail_mass = 1e-6;

  std::pair<double, double> integration_terminals() const;
};

}  // namespace carbon
