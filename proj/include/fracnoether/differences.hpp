#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fracnoether/grid.hpp"

namespace fracnoether {

/// First derivative on a uniform grid: central differences in the interior,
/// second-order one-sided three-point stencils at both ends.
Eigen::VectorXd finite_difference(const Grid& grid, const Eigen::VectorXd& f);

/// Same stencils on an arbitrary strictly increasing node set.
Eigen::VectorXd finite_difference(std::span<const double> nodes, const Eigen::VectorXd& f);

/// Composite trapezoid rule over the whole grid.
double trapezoid(const Grid& grid, const Eigen::VectorXd& f);

/// Running trapezoid integral from t_0 to t_k. Entries of `f` that are NaN are
/// treated as missing: a panel with one missing end uses the other end as a
/// rectangle, a panel with both ends missing contributes nothing.
std::vector<double> cumulative_trapezoid(const Grid& grid, std::span<const double> f);

}  // namespace fracnoether
