#pragma once

#include <carbon/model.hpp>
#include <carbon/option_pricing.hpp>
#include <carbon/surface.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace carbon {

/// Independent generator for path `index` under root `seed`; streams depend
/// only on (seed, index), never on the order in which paths are run.
std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t index);

enum class ExitPolicy { Throw, Record };

struct PathOptions {
  double dt = 0.02;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// Exit when |X| >= bound; defaults to the surface half-width l.
  std::optional<double> exit_bound;
  ExitPolicy on_exit = ExitPolicy::Throw;
};

struct SimulatedPath {
  std::vector<double> times;
  std::vector<double> states;
  std::vector<double> prices;
  std::vector<int> jump_counts;    // jumps in (t_{k-1}, t_k]; 0 at k = 0
  std::vector<double> jump_sizes;  // summed displacement in (t_{k-1}, t_k]
  std::optional<std::size_t> exit_step;

  bool exited() const { return exit_step.has_value(); }
};

class DomainExitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forward Euler for
///   dX = -r(alpha(t, X)) dt + sigma(t, X) dW + d(compensated jumps),
/// with a Poisson(lambda dt) jump count per step and i.i.d. sizes from nu.
/// The step is shrunk so that it divides [t_start, t_end] exactly. With
/// ExitPolicy::Record the path stops at the first step with |X| >= bound.
SimulatedPath simulate_path(const PriceSurface& alpha, const ModelParams& params, double x_start, double t_start,
                            double t_end, const PathOptions& options);

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;  // 1.96 sample std / sqrt(n)
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::size_t exits = 0;

  double ci_low() const { return mean - half_width_95; }
  double ci_high() const { return mean + half_width_95; }
};

/// Pairwise (cascade) summation in fixed order.
double pairwise_sum(const double* first, std::size_t n);

/// Mean and 95% half-width of a sample.
McEstimate estimate_from_samples(const std::vector<double>& samples, std::uint64_t seed);

/// E[(alpha(tau_opt, X_tau_opt) - K)^+ | X_t = x] with alpha(t, x) = a.
/// Paths leaving the surface domain are dropped; more than 1% of them is an error.
McEstimate price_call_mc(const PriceSurface& alpha, const ModelParams& params, const CallSpec& spec, double price,
                         std::size_t n_paths, double dt, std::uint64_t seed);

/// E[alpha(tau, X_tau) | X_t = x].
McEstimate mc_martingale_check(const PriceSurface& alpha, const ModelParams& params, double t, double x, double tau,
                               std::size_t n_paths, double dt, std::uint64_t seed);

/// Number of n_paths paths from (t_start, x_start) that reach |X| >= bound before t_end.
std::size_t count_domain_exits(const PriceSurface& alpha, const ModelParams& params, double x_start, double t_start,
                               double t_end, double bound, std::size_t n_paths, double dt, std::uint64_t seed);

/// |mean - reference| <= half-width + 1e-2 pi.
bool martingale_consistent(const McEstimate& est, double reference, double penalty);

}  // namespace carbon
