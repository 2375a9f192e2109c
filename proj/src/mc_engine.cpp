#include <carbon/fd_engine.hpp>
#include <carbon/mc_engine.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace carbon {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-call state shared by every path of one simulation batch.
class PathSimulator {
 public:
  PathSimulator(const PriceSurface& alpha, const ModelParams& params) : alpha_(alpha), params_(params) {
    if (params_.jumps && params_.jumps->intensity > 0 && !params_.jumps->map_is_identity)
      quad_ = quadrature_weights(*params_.jumps, alpha_.grid().dx());
  }

  SimulatedPath run(double x_start, double t_start, double t_end, const PathOptions& opt, bool record) const {
    if (!(opt.dt > 0)) throw std::invalid_argument("simulate_path: dt must be positive");
    if (!std::isfinite(x_start)) throw std::invalid_argument("simulate_path: x_start must be finite");
    if (!(t_end >= t_start)) throw std::invalid_argument("simulate_path: need t_start <= t_end");

    const double span = t_end - t_start;
    const auto steps = static_cast<std::size_t>(span > 0 ? std::max(1.0, std::ceil(span / opt.dt - 1e-9)) : 0.0);
    const double dt = steps ? span / static_cast<double>(steps) : 0.0;
    const double sqrt_dt = std::sqrt(dt);
    const double bound = opt.exit_bound.value_or(alpha_.grid().half_width);
    const double lambda = params_.intensity();
    const double T = params_.horizon;

    std::mt19937_64 rng = path_stream(opt.seed, opt.stream);
    std::normal_distribution<double> gauss;
    std::poisson_distribution<int> poisson(lambda * dt > 0 ? lambda * dt : 1.0);

    SimulatedPath path;
    if (record) {
      path.times.reserve(steps + 1);
      path.states.reserve(steps + 1);
      path.prices.reserve(steps + 1);
    }
    double x = x_start;
    auto push = [&](double t, int count, double jump) {
      if (!record) return;
      path.times.push_back(t);
      path.states.push_back(x);
      path.prices.push_back(alpha_.at(t, x));
      path.jump_counts.push_back(count);
      path.jump_sizes.push_back(jump);
    };
    push(t_start, 0, 0.0);

    for (std::size_t k = 0; k < steps; ++k) {
      const double t = t_start + dt * static_cast<double>(k);
      const double drift = -params_.abatement(alpha_.at(t, x));
      const double diffusion = params_.diffusion(t, x) * sqrt_dt * gauss(rng);
      int count = 0;
      double jump = 0.0;
      if (lambda > 0) {
        count = poisson(rng);
        const double tau = T - t;
        for (int c = 0; c < count; ++c) jump += params_.jumps->map(tau, x, params_.jumps->distribution.sample(rng));
        jump -= lambda * dt * compensator(tau, x);
      }
      x += drift * dt + diffusion + jump;
      const double t_next = k + 1 == steps ? t_end : t_start + dt * static_cast<double>(k + 1);
      const bool out = std::abs(x) >= bound;
      if (record) push(t_next, count, jump);
      if (out) {
        path.exit_step = k + 1;
        if (opt.on_exit == ExitPolicy::Throw)
          throw DomainExitError("path left [-" + std::to_string(bound) + ", " + std::to_string(bound) + "] at t = " +
                                std::to_string(t_next));
        break;
      }
    }
    if (!record) {
      path.times.push_back(path.exit_step ? t_start + dt * static_cast<double>(*path.exit_step) : t_end);
      path.states.push_back(x);
    }
    return path;
  }

 private:
  // lambda^{-1} times the compensator rate: int a(tau, x, y) nu(dy).
  double compensator(double tau, double x) const {
    if (params_.jumps->map_is_identity) return params_.jumps->distribution.mean();
    double sum = 0.0;
    for (int j = quad_.first; j <= quad_.last; ++j) sum += params_.jumps->map(tau, x, quad_.node(j)) * quad_.weight(j);
    return sum;
  }

  const PriceSurface& alpha_;
  const ModelParams& params_;
  QuadratureRule quad_;
};

}  // namespace

std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed ^ splitmix64(index));
  const std::uint64_t b = splitmix64(a ^ 0xd1b54a32d192ed03ULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

SimulatedPath simulate_path(const PriceSurface& alpha, const ModelParams& params, double x_start, double t_start,
                            double t_end, const PathOptions& options) {
  return PathSimulator(alpha, params).run(x_start, t_start, t_end, options, true);
}

double pairwise_sum(const double* first, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += first[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(first, half) + pairwise_sum(first + half, n - half);
}

McEstimate estimate_from_samples(const std::vector<double>& samples, std::uint64_t seed) {
  McEstimate est;
  est.seed = seed;
  est.n_samples = samples.size();
  if (samples.empty()) return est;
  const double n = static_cast<double>(samples.size());
  est.mean = pairwise_sum(samples.data(), samples.size()) / n;
  if (samples.size() > 1) {
    std::vector<double> sq(samples.size());
    std::transform(samples.begin(), samples.end(), sq.begin(), [m = est.mean](double v) { return (v - m) * (v - m); });
    const double var = pairwise_sum(sq.data(), sq.size()) / (n - 1.0);
    est.half_width_95 = 1.96 * std::sqrt(var / n);
  }
  return est;
}

namespace {

template <typename Payoff>
McEstimate run_batch(const PriceSurface& alpha, const ModelParams& params, double x, double t, double t_end,
                     std::size_t n_paths, double dt, std::uint64_t seed, Payoff payoff) {
  if (n_paths == 0) throw std::invalid_argument("Monte Carlo needs at least one path");
  const PathSimulator sim(alpha, params);
  std::vector<double> values;
  values.reserve(n_paths);
  std::size_t exits = 0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    PathOptions opt;
    opt.dt = dt;
    opt.seed = seed;
    opt.stream = p;
    opt.on_exit = ExitPolicy::Record;
    const SimulatedPath path = sim.run(x, t, t_end, opt, false);
    if (path.exited()) {
      ++exits;
      continue;
    }
    values.push_back(payoff(path.states.back()));
  }
  if (static_cast<double>(exits) > 0.01 * static_cast<double>(n_paths))
    throw DomainExitError(std::to_string(exits) + " of " + std::to_string(n_paths) +
                          " paths left the truncated domain; enlarge l");
  McEstimate est = estimate_from_samples(values, seed);
  est.exits = exits;
  return est;
}

}  // namespace

McEstimate price_call_mc(const PriceSurface& alpha, const ModelParams& params, const CallSpec& spec, double price,
                         std::size_t n_paths, double dt, std::uint64_t seed) {
  spec.validate(params.penalty, params.horizon);
  const Inversion inv = invert_alpha(alpha, spec.valuation_time, price);
  if (spec.maturity - spec.valuation_time <= 1e-12) {
    McEstimate est;
    est.mean = std::max(price - spec.strike, 0.0);
    est.n_samples = n_paths;
    est.seed = seed;
    return est;
  }
  const double tau = spec.maturity;
  const double K = spec.strike;
  return run_batch(alpha, params, inv.x, spec.valuation_time, tau, n_paths, dt, seed,
                   [&](double x) { return std::max(alpha.at(tau, x) - K, 0.0); });
}

McEstimate mc_martingale_check(const PriceSurface& alpha, const ModelParams& params, double t, double x, double tau,
                               std::size_t n_paths, double dt, std::uint64_t seed) {
  if (!(t >= 0 && t <= tau && tau <= params.horizon + 1e-12))
    throw std::invalid_argument("mc_martingale_check: need 0 <= t <= tau <= T");
  if (tau - t <= 1e-12) {
    McEstimate est;
    est.mean = alpha.at(t, x);
    est.n_samples = n_paths;
    est.seed = seed;
    return est;
  }
  return run_batch(alpha, params, x, t, tau, n_paths, dt, seed, [&](double xe) { return alpha.at(tau, xe); });
}

std::size_t count_domain_exits(const PriceSurface& alpha, const ModelParams& params, double x_start, double t_start,
                               double t_end, double bound, std::size_t n_paths, double dt, std::uint64_t seed) {
  const PathSimulator sim(alpha, params);
  std::size_t exits = 0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    PathOptions opt;
    opt.dt = dt;
    opt.seed = seed;
    opt.stream = p;
    opt.exit_bound = bound;
    opt.on_exit = ExitPolicy::Record;
    if (sim.run(x_start, t_start, t_end, opt, false).exited()) ++exits;
  }
  return exits;
}

bool martingale_consistent(const McEstimate& est, double reference, double penalty) {
  return std::abs(est.mean - reference) <= est.half_width_95 + 1e-2 * penalty;
}

}  // namespace carbon
