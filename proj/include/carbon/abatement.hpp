#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace carbon {

/// Deterministic abatement cost C(x) for a reduction volume x in [0, cap].
struct ConvexCost {
  std::function<double(double)> cost;
  double cap = std::numeric_limits<double>::infinity();

  /// C(x) = x^2 / (2 c); the locally optimal reduction is min(c a, cap).
  static ConvexCost quadratic(double c, double cap = std::numeric_limits<double>::infinity());
  /// C(x) = k x^p with p > 1.
  static ConvexCost power(double k, double p, double cap = std::numeric_limits<double>::infinity());

  /// Checks C(0) = 0 and strict midpoint convexity on sampled triples.
  /// Returns an empty string on success, otherwise the first violation.
  std::string check() const;
};

/// argmax { a x - C(x) : 0 <= x <= cap }.
///
/// The maximiser is located by bisection on the sign of the slope a - C'(x),
/// with C' taken by central differences; an infinite cap is handled by
/// doubling the bracket until the slope turns negative. Flat maxima resolve
/// to the smallest maximiser. Throws for a < 0.
double reduction_from_cost(const ConvexCost& cost, double price);

/// Reduction rate r(a) as a function of the allowance price.
class AbatementFunction {
 public:
  struct Linear {
    double slope;
  };
  struct Tabulated {
    std::vector<double> prices;
    std::vector<double> rates;
  };
  struct FromCost {
    ConvexCost cost;
  };
  struct Sum {
    std::vector<AbatementFunction> parts;
  };
  using Kind = std::variant<Linear, Tabulated, FromCost, Sum>;

  /// r(a) = c a. c = 0 gives the no-abatement case r = 0.
  static AbatementFunction linear(double slope);
  /// Piecewise-linear through monotone samples, flat beyond the end points.
  static AbatementFunction tabulated(std::vector<double> prices, std::vector<double> rates);
  static AbatementFunction from_cost(ConvexCost cost);

  double operator()(double price) const;

  const Kind& kind() const { return kind_; }
  bool is_linear() const { return std::holds_alternative<Linear>(kind_); }
  /// Slope of a linear abatement function; throws for other kinds.
  double linear_slope() const;

  /// Checks r(0) >= 0 and monotonicity on a uniform sample of [0, max_price].
  std::string check(double max_price) const;

 private:
  explicit AbatementFunction(Kind kind) : kind_(std::move(kind)) {}
  friend AbatementFunction aggregate(const std::vector<AbatementFunction>&);

  Kind kind_;
};

/// Pointwise sum of per-agent reduction functions. Linear inputs collapse to
/// a single linear function; a single input is returned unchanged.
AbatementFunction aggregate(const std::vector<AbatementFunction>& reductions);

}  // namespace carbon
