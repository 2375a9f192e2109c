#pragma once

// Semi-implicit finite-difference solver for the allowance price equation
//
//   beta_tau = -r(beta) beta_x + (sigma^2 / 2) beta_xx
//              + lambda int [beta(x + a) - beta - a beta_x] nu(dy),
//   beta(0, x) = pi 1{x >= 0},
//
// in reversed time tau = T - t. Diffusion, upwind advection and the local jump
// terms are implicit; r(beta) and the non-local quadrature sum are lagged at
// the known level, so each step is one tridiagonal solve.

#include <carbon/model.hpp>
#include <carbon/surface.hpp>
#include <carbon/tridiagonal.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace carbon {

/// Cell masses nu_j = nu([(j - 1/2) dx, (j + 1/2) dx]) for j = first..last.
struct QuadratureRule {
  int first = 0;  // J1
  int last = -1;  // J2
  double dx = 0.0;
  std::vector<double> weights;

  int size() const { return last - first + 1; }
  double weight(int j) const { return weights[static_cast<std::size_t>(j - first)]; }
  /// Jump size represented by cell j.
  double node(int j) const { return j * dx; }
  double total_mass() const;
};

/// J1, J2 are the tightest terminals with [k1, k2] inside
/// [(J1 - 1/2) dx, (J2 + 1/2) dx].
QuadratureRule quadrature_weights(const JumpDistribution& nu, double dx, double k1, double k2);
QuadratureRule quadrature_weights(const JumpSpec& jumps, double dx);

/// Nearest grid index to x_i + displacement, ties to the lower index. The
/// result may fall outside 0..N-1; lookups then take the ghost value.
int jump_target_index(int i, double displacement, double dx);
/// j*(i, j, n) for the jump of size y_j = j dx at level n.
int jump_target_index(int i, int j, int n, const GridSpec& grid, const JumpMap& map);

/// Thrown when a coefficient F, G or H turns negative, i.e. the grid violates
/// the discrete maximum-principle condition.
class GridConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest excursion outside [0, upper] treated as solver rounding and
/// clamped back; anything larger raises MaxPrincipleError.
inline double range_slack(double upper) { return 1e-12 * std::max(upper, 1.0); }

/// Thrown when a solved value leaves [0, pi] by more than range_slack(pi).
class MaxPrincipleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The step-n system together with its coefficient vectors.
struct AssembledStep {
  TridiagonalSystem<double> system;
  Eigen::VectorXd F;
  Eigen::VectorXd G;
  Eigen::VectorXd H;
  Eigen::VectorXd jump_drift;  // Sigma_i^{n+1}
};

/// Reusable assembly context: holds the quadrature rule and, for jump maps
/// that ignore (tau, x), the precomputed drift correction.
class StepAssembler {
 public:
  StepAssembler(const ModelParams& params, const GridSpec& grid);

  /// System for the step n -> n + 1 of a linear equation whose advection
  /// coefficient is frozen at r(drift_row) and whose known level is
  /// value_row; upper_ghost is the value taken for x >= l.
  AssembledStep assemble(int n, const Eigen::Ref<const Eigen::VectorXd>& drift_row,
                         const Eigen::Ref<const Eigen::VectorXd>& value_row, double upper_ghost) const;

  /// Sigma_i^n = sum_j a(tau_n, x_i, y_j) nu_j.
  double jump_drift(int i, int n) const;

  const QuadratureRule& quadrature() const { return quad_; }

 private:
  ModelParams params_;
  GridSpec grid_;
  QuadratureRule quad_;
  bool constant_drift_ = false;
  double drift_value_ = 0.0;
};

/// Nonlinear step: drift and value rows are both beta^n, upper ghost pi.
AssembledStep assemble_step(int n, const Eigen::Ref<const Eigen::VectorXd>& row, const ModelParams& params,
                            const GridSpec& grid);

/// Full surface beta_i^n, n = 0..M. Rejects invalid inputs with ValidationError.
PriceSurface solve_surface(const ModelParams& params, const GridSpec& grid);

struct GridCondition {
  bool holds = true;
  double min_jump_drift = 0.0;  // Sigma*
  double min_variance = 0.0;    // sigma*^2
};

/// -Sigma* dx <= sigma*^2 / (2 lambda) over all i = 0..N-1, n = 0..M;
/// vacuous without jumps.
GridCondition grid_condition(const ModelParams& params, const GridSpec& grid);
bool check_grid_condition(const ModelParams& params, const GridSpec& grid);

/// 0 <= value <= upper ghost for every stored value.
bool check_max_principle(const PriceSurface& surface);

struct Inversion {
  double x;    // state with alpha(t, x) = a
  int level;   // time level used
  double tau;  // its reversed time
};

/// Solves alpha(t, x) = a on the nearest time level by bisection over the
/// grid row and linear interpolation between the bracketing nodes.
Inversion invert_alpha(const PriceSurface& surface, double t, double price);

}  // namespace carbon
