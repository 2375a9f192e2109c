#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace carbon {

/// One implicit time step M beta = y with M tridiagonal.
/// Row i reads lower(i) x(i-1) + diag(i) x(i) + upper(i) x(i+1) = rhs(i);
/// lower(0) and upper(n-1) are carried but never referenced.
template <typename Scalar>
struct TridiagonalSystem {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector lower;
  Vector diag;
  Vector upper;
  Vector rhs;

  TridiagonalSystem() = default;
  explicit TridiagonalSystem(Eigen::Index n)
      : lower(Vector::Zero(n)), diag(Vector::Zero(n)), upper(Vector::Zero(n)), rhs(Vector::Zero(n)) {}

  Eigen::Index size() const { return diag.size(); }

  /// Smallest diag(i) - |lower(i)| - |upper(i)| over all rows.
  Scalar dominance_margin() const {
    Scalar margin = std::numeric_limits<Scalar>::infinity();
    const Eigen::Index n = size();
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar off = 0;
      if (i > 0) off += std::abs(lower(i));
      if (i + 1 < n) off += std::abs(upper(i));
      margin = std::min(margin, std::abs(diag(i)) - off);
    }
    return margin;
  }

  /// Dense copy, for tests and diagnostics.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const Eigen::Index n = size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, i) = diag(i);
      if (i > 0) m(i, i - 1) = lower(i);
      if (i + 1 < n) m(i, i + 1) = upper(i);
    }
    return m;
  }
};

/// Thomas algorithm. Stable without pivoting for diagonally dominant systems;
/// a vanishing pivot means the dominance invariant was broken upstream.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> thomas_solve(const TridiagonalSystem<Scalar>& sys) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = sys.size();
  if (n == 0) return Vector();
  if (sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n)
    throw std::invalid_argument("thomas_solve: inconsistent band lengths");

  Vector c(n);  // modified super-diagonal
  Vector d(n);  // modified right-hand side
  Scalar pivot = sys.diag(0);
  if (pivot == Scalar(0)) throw std::runtime_error("thomas_solve: zero pivot in row 0");
  c(0) = n > 1 ? sys.upper(0) / pivot : Scalar(0);
  d(0) = sys.rhs(0) / pivot;
  for (Eigen::Index i = 1; i < n; ++i) {
    pivot = sys.diag(i) - sys.lower(i) * c(i - 1);
    if (pivot == Scalar(0)) throw std::runtime_error("thomas_solve: zero pivot in row " + std::to_string(i));
    c(i) = i + 1 < n ? sys.upper(i) / pivot : Scalar(0);
    d(i) = (sys.rhs(i) - sys.lower(i) * d(i - 1)) / pivot;
  }
  Vector x(n);
  x(n - 1) = d(n - 1);
  for (Eigen::Index i = n - 1; i-- > 0;) x(i) = d(i) - c(i) * x(i + 1);
  return x;
}

}  // namespace carbon
