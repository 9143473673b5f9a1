#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>

#include "fracnoether/grid.hpp"
#include "fracnoether/trajectory.hpp"

namespace fracnoether {

enum class OperatorKind { left_integral, right_integral, left_caputo, right_caputo, left_rl, right_rl };

std::string_view to_string(OperatorKind kind);

/// Dense (N+1)x(N+1) discretization of a fractional integral or derivative.
///
/// Sign convention for right derivatives: the right Caputo derivative is
/// -I^{1-alpha}_{b-} o d/dt and the right Riemann-Liouville derivative is
/// -d/dt o I^{1-alpha}_{b-}, so both reduce to -d/dt at alpha = 1.
class OperatorMatrix {
 public:
  OperatorMatrix(OperatorKind kind, FractionalOrder alpha, Grid grid, Eigen::MatrixXd entries,
                 std::optional<std::size_t> undefined_node = std::nullopt);

  OperatorKind kind() const noexcept { return kind_; }
  FractionalOrder alpha() const noexcept { return alpha_; }
  const Grid& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  /// Node where the operator is singular (Riemann-Liouville boundary node).
  std::optional<std::size_t> undefined_node() const noexcept { return undefined_node_; }

  /// Applies to node values; the undefined node, if any, comes back as NaN.
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
  /// Component-wise application; the undefined node is masked.
  Trajectory apply(const Trajectory& x) const;

 private:
  OperatorKind kind_;
  FractionalOrder alpha_;
  Grid grid_;
  Eigen::MatrixXd entries_;
  std::optional<std::size_t> undefined_node_;
};

/// Product quadrature of the left Riemann-Liouville integral: the kernel is
/// integrated exactly on every panel against the average of the two end values.
OperatorMatrix left_integral_matrix(const Grid& grid, FractionalOrder alpha);
OperatorMatrix right_integral_matrix(const Grid& grid, FractionalOrder alpha);

/// L1 rule: piecewise-constant derivative, exact kernel integration. At
/// alpha = 1 this is the plain finite-difference derivative.
OperatorMatrix left_caputo_matrix(const Grid& grid, FractionalOrder alpha);
OperatorMatrix right_caputo_matrix(const Grid& grid, FractionalOrder alpha);

/// Caputo plus the boundary term of the Caputo/Riemann-Liouville relation.
OperatorMatrix left_rl_matrix(const Grid& grid, FractionalOrder alpha);
OperatorMatrix right_rl_matrix(const Grid& grid, FractionalOrder alpha);

Trajectory caputo_left(const Grid& grid, FractionalOrder alpha, const Trajectory& x);
Trajectory caputo_right(const Grid& grid, FractionalOrder alpha, const Trajectory& x);
Trajectory rl_left(const Grid& grid, FractionalOrder alpha, const Trajectory& x);
Trajectory rl_right(const Grid& grid, FractionalOrder alpha, const Trajectory& x);

/// Scalar node-series overloads used by the Lagrangian and Noether modules.
Eigen::VectorXd caputo_left(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f);
Eigen::VectorXd caputo_right(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f);
Eigen::VectorXd rl_right(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f);

struct CompositionReport {
  double caputo_residual;  // sup |I^a(cD^a x) - (x - x(a))| over interior nodes
  double rl_residual;      // sup |I^a(D^a x) - x| over interior nodes
};

/// Discrete check of I^a o cD^a x = x - x(a) and I^a o D^a x = x. The singular
/// first node of D^a x is replaced by its first-panel cell average.
CompositionReport check_composition(const Grid& grid, FractionalOrder alpha, const Trajectory& x);

}  // namespace fracnoether
