#pragma once

// CSV artifacts. Every floating-point field carries 17 significant digits so
// a file round-trips to the exact doubles it was written from.

#include <carbon/mc_engine.hpp>
#include <carbon/surface.hpp>
#include <carbon/truncation.hpp>

#include <Eigen/Core>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace carbon {

/// Header "tau, x_0, ..., x_{N-1}", then one row per stored time level.
void write_surface_csv(std::ostream& out, const PriceSurface& surface);

/// Header "t, x_0, ...", then the nearest stored level for each requested time.
void write_slices_csv(std::ostream& out, const PriceSurface& surface, const std::vector<double>& times);

struct CallPriceRow {
  double maturity;
  double pde_price;
  std::optional<McEstimate> mc;
};
/// tau, pde_price, mc_mean, mc_ci_low, mc_ci_high; MC fields are empty when absent.
void write_call_prices_csv(std::ostream& out, const std::vector<CallPriceRow>& rows);

/// tau, mean, ci_low, ci_high, n, seed, exits.
void write_estimates_csv(std::ostream& out, const std::vector<CallPriceRow>& rows);

/// t, X, A, jump_flag.
void write_path_csv(std::ostream& out, const SimulatedPath& path);
/// key, value summary of a path.
void write_path_summary_csv(std::ostream& out, const SimulatedPath& path, std::uint64_t seed);

void write_truncation_csv(std::ostream& out, const TruncationReport& report);
void print_truncation_table(std::ostream& out, const TruncationReport& report);

struct ComparisonRow {
  double sigma;
  double intensity;
  Eigen::VectorXd values;
};
/// sigma, lambda, x_0, ..., x_{N-1}.
void write_comparison_csv(std::ostream& out, const GridSpec& grid, const std::vector<ComparisonRow>& rows);

}  // namespace carbon
