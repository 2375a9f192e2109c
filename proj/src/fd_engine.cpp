#include <carbon/fd_engine.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace carbon {

double QuadratureRule::total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

QuadratureRule quadrature_weights(const JumpDistribution& nu, double dx, double k1, double k2) {
  if (!(dx > 0)) throw std::invalid_argument("quadrature_weights: dx must be positive");
  if (!(k1 <= k2) || !std::isfinite(k1) || !std::isfinite(k2))
    throw std::invalid_argument("quadrature_weights: need finite terminals with K1 <= K2");
  QuadratureRule rule;
  rule.dx = dx;
  rule.first = static_cast<int>(std::floor(k1 / dx + 0.5));
  rule.last = static_cast<int>(std::ceil(k2 / dx - 0.5));
  rule.weights.reserve(static_cast<std::size_t>(rule.size()));
  for (int j = rule.first; j <= rule.last; ++j) rule.weights.push_back(nu.mass((j - 0.5) * dx, (j + 0.5) * dx));
  return rule;
}

QuadratureRule quadrature_weights(const JumpSpec& jumps, double dx) {
  const auto [k1, k2] = jumps.integration_terminals();
  return quadrature_weights(jumps.distribution, dx, k1, k2);
}

int jump_target_index(int i, double displacement, double dx) {
  // argmin_k |x_i + a - x_k| with x_k - x_i = (k - i) dx; ceil(u - 1/2) sends ties down.
  return i + static_cast<int>(std::ceil(displacement / dx - 0.5));
}

int jump_target_index(int i, int j, int n, const GridSpec& grid, const JumpMap& map) {
  const double dx = grid.dx();
  return jump_target_index(i, map(grid.tau(n), grid.x(i), j * dx), dx);
}

StepAssembler::StepAssembler(const ModelParams& params, const GridSpec& grid) : params_(params), grid_(grid) {
  if (params_.jumps && params_.jumps->intensity > 0) {
    quad_ = quadrature_weights(*params_.jumps, grid_.dx());
    if (params_.jumps->map_is_identity) {
      constant_drift_ = true;
      drift_value_ = 0.0;
      for (int j = quad_.first; j <= quad_.last; ++j) drift_value_ += quad_.node(j) * quad_.weight(j);
    }
  }
}

double StepAssembler::jump_drift(int i, int n) const {
  if (!params_.jumps || quad_.size() <= 0) return 0.0;
  if (constant_drift_) return drift_value_;
  const double tau = grid_.tau(n);
  const double x = grid_.x(i);
  double sum = 0.0;
  for (int j = quad_.first; j <= quad_.last; ++j) sum += params_.jumps->map(tau, x, quad_.node(j)) * quad_.weight(j);
  return sum;
}

AssembledStep StepAssembler::assemble(int n, const Eigen::Ref<const Eigen::VectorXd>& drift_row,
                                      const Eigen::Ref<const Eigen::VectorXd>& value_row, double upper_ghost) const {
  const int N = grid_.space_points;
  if (n < 0 || n >= grid_.time_points) throw std::out_of_range("assemble: time level out of range");
  if (drift_row.size() != N || value_row.size() != N) throw std::invalid_argument("assemble: row length must equal N");

  const double dx = grid_.dx();
  const double dt = grid_.dt();
  const double lambda = params_.intensity();
  const double tau_next = grid_.tau(n + 1);
  const double tau_now = grid_.tau(n);
  const bool has_jumps = lambda > 0 && quad_.size() > 0;

  auto value_at = [&](int k) {
    if (k < 0) return 0.0;
    if (k >= N) return upper_ghost;
    return value_row(k);
  };

  AssembledStep step{TridiagonalSystem<double>(N), Eigen::VectorXd(N), Eigen::VectorXd(N), Eigen::VectorXd(N),
                     Eigen::VectorXd::Zero(N)};
  for (int i = 0; i < N; ++i) {
    const double x = grid_.x(i);
    const double s = params_.diffusion(tau_next, x);
    const double var = s * s;
    const double r = params_.abatement(drift_row(i));
    const double sigma_next = has_jumps ? jump_drift(i, n + 1) : 0.0;
    step.jump_drift(i) = sigma_next;

    const double F = var / (2.0 * dx * dx) + r / dx + lambda * sigma_next / dx;
    const double G = var / (dx * dx) + r / dx + lambda * sigma_next / dx + lambda;
    const double H = var / (2.0 * dx * dx);
    if (F < 0 || G < 0 || H < 0)
      throw GridConditionError("negative scheme coefficient at i = " + std::to_string(i) + ", n = " +
                               std::to_string(n) + " (grid condition violated)");
    step.F(i) = F;
    step.G(i) = G;
    step.H(i) = H;

    step.system.lower(i) = -F * dt;
    step.system.diag(i) = 1.0 + G * dt;
    step.system.upper(i) = -H * dt;

    double jump_sum = 0.0;
    if (has_jumps) {
      if (constant_drift_) {
        for (int j = quad_.first; j <= quad_.last; ++j) jump_sum += quad_.weight(j) * value_at(i + j);
      } else {
        for (int j = quad_.first; j <= quad_.last; ++j) {
          const double a = params_.jumps->map(tau_now, x, quad_.node(j));
          jump_sum += quad_.weight(j) * value_at(jump_target_index(i, a, dx));
        }
      }
    }
    step.system.rhs(i) = value_row(i) + lambda * dt * jump_sum;
  }
  step.system.rhs(N - 1) += step.H(N - 1) * dt * upper_ghost;
  return step;
}

AssembledStep assemble_step(int n, const Eigen::Ref<const Eigen::VectorXd>& row, const ModelParams& params,
                            const GridSpec& grid) {
  for (Eigen::Index i = 0; i < row.size(); ++i)
    if (!(row(i) >= 0 && row(i) <= params.penalty))
      throw std::invalid_argument("assemble_step: known level must lie in [0, pi]");
  return StepAssembler(params, grid).assemble(n, row, row, params.penalty);
}

namespace {

// Clamps rounding-level excursions; throws for anything larger.
std::size_t enforce_range(Eigen::Ref<Eigen::VectorXd> row, double upper, int level) {
  const double slack = range_slack(upper);
  std::size_t clamped = 0;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    const double v = row(i);
    if (!(v >= -slack && v <= upper + slack))
      throw MaxPrincipleError("value " + std::to_string(v) + " at level " + std::to_string(level) + ", node " +
                              std::to_string(i) + " leaves [0, " + std::to_string(upper) + "]");
    if (v < 0.0 || v > upper) {
      row(i) = std::clamp(v, 0.0, upper);
      ++clamped;
    }
  }
  return clamped;
}

}  // namespace

PriceSurface solve_surface(const ModelParams& params, const GridSpec& grid) {
  require_valid(params, grid);
  const int N = grid.space_points;
  const int M = grid.time_points;
  const double pi = params.penalty;

  PriceSurface::Matrix values(M + 1, N);
  for (int i = 0; i < N; ++i) values(0, i) = grid.nonnegative(i) ? pi : 0.0;

  const StepAssembler assembler(params, grid);
  std::size_t clamped = 0;
  Eigen::VectorXd current = values.row(0).transpose();
  for (int n = 0; n < M; ++n) {
    const AssembledStep step = assembler.assemble(n, current, current, pi);
    Eigen::VectorXd next = thomas_solve(step.system);
    clamped += enforce_range(next, pi, n + 1);
    values.row(n + 1) = next.transpose();
    current = std::move(next);
  }
  PriceSurface surface(grid, pi, 0, std::move(values));
  surface.clamped_values = clamped;
  return surface;
}

GridCondition grid_condition(const ModelParams& params, const GridSpec& grid) {
  GridCondition result;
  const double lambda = params.intensity();
  const int N = grid.space_points;
  const int M = grid.time_points;
  double min_var = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= M; ++n)
    for (int i = 0; i < N; ++i) {
      const double s = params.diffusion(grid.tau(n), grid.x(i));
      min_var = std::min(min_var, s * s);
    }
  result.min_variance = min_var;
  if (!(lambda > 0)) return result;

  const StepAssembler assembler(params, grid);
  double min_drift = std::numeric_limits<double>::infinity();
  if (params.jumps->map_is_identity) {
    min_drift = assembler.jump_drift(0, 0);
  } else {
    for (int n = 0; n <= M; ++n)
      for (int i = 0; i < N; ++i) min_drift = std::min(min_drift, assembler.jump_drift(i, n));
  }
  result.min_jump_drift = min_drift;
  result.holds = -min_drift * grid.dx() <= min_var / (2.0 * lambda);
  return result;
}

bool check_grid_condition(const ModelParams& params, const GridSpec& grid) {
  return grid_condition(params, grid).holds;
}

bool check_max_principle(const PriceSurface& surface) {
  const auto& v = surface.values();
  return (v.array() >= 0.0).all() && (v.array() <= surface.upper_ghost()).all();
}

Inversion invert_alpha(const PriceSurface& surface, double t, double price) {
  const double pi = surface.upper_ghost();
  if (!(price > 0 && price < pi)) throw std::invalid_argument("invert_alpha: price must lie strictly inside (0, pi)");
  const GridSpec& grid = surface.grid();
  if (!(t >= -1e-12 && t <= grid.horizon + 1e-12)) throw std::invalid_argument("invert_alpha: t outside [0, T]");

  const int n = surface.level_for_time(t);
  const auto row = surface.level(n);
  const int N = grid.space_points;
  Inversion out{0.0, n, grid.tau(n)};

  if (row(0) == price) {
    out.x = grid.x(0);
    return out;
  }
  if (row(0) > price || row(N - 1) < price)
    throw std::domain_error("invert_alpha: price " + std::to_string(price) +
                            " is not attained on the truncated domain at this time level");

  int lo = 0, hi = N - 1;  // row(lo) < price <= row(hi)
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (row(mid) >= price)
      hi = mid;
    else
      lo = mid;
  }
  if ((lo > 0 && row(lo - 1) > row(lo)) || (hi + 1 < N && row(hi) > row(hi + 1)))
    throw std::domain_error("invert_alpha: row is not monotone around the crossing");
  if (row(hi) == price) {
    out.x = grid.x(hi);
    return out;
  }
  const double w = (price - row(lo)) / (row(hi) - row(lo));
  out.x = grid.x(lo) + w * grid.dx();
  return out;
}

}  // namespace carbon
