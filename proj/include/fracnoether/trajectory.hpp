#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "fracnoether/grid.hpp"

namespace fracnoether {

/// Node-sampled path x(t_k) in R^n. Row k holds the state at grid node k.
///
/// Some operators (Riemann-Liouville derivatives) are singular at one
/// boundary node; such rows are flagged undefined and hold NaN.
class Trajectory {
 public:
  Trajectory(Grid grid, Eigen::MatrixXd values);
  Trajectory(Grid grid, Eigen::MatrixXd values, std::vector<bool> defined);

  /// Samples f at every node of `grid`.
  static Trajectory sample(const Grid& grid, std::size_t dim,
                           const std::function<Eigen::VectorXd(double)>& f);
  /// Rows containing a non-finite entry become undefined nodes.
  static Trajectory masked(const Grid& grid, Eigen::MatrixXd values);
  /// Scalar convenience overload.
  static Trajectory sample_scalar(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

  Eigen::VectorXd component(std::size_t i) const { return values_.col(static_cast<Eigen::Index>(i)); }
  Eigen::VectorXd state(std::size_t k) const {
    return values_.row(static_cast<Eigen::Index>(k)).transpose();
  }

  bool defined(std::size_t k) const noexcept { return defined_[k]; }
  const std::vector<bool>& mask() const noexcept { return defined_; }
  bool fully_defined() const noexcept;

  /// Path under s -> a + b - s, on the same grid.
  Trajectory reversed() const;

 private:
  Grid grid_;
  Eigen::MatrixXd values_;
  std::vector<bool> defined_;
};

/// Scalar quantity sampled along a trajectory.
struct QuantitySeries {
  QuantitySeries(Grid grid, std::vector<double> values);

  Grid grid;
  std::vector<double> values;   // NaN where undefined
  std::vector<bool> defined;    // derived from finiteness of `values`
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return values.size(); }
  std::size_t defined_count() const noexcept;
  /// Sup of |values| over defined nodes whose index lies in [first, last].
  double sup_norm(std::size_t first, std::size_t last) const;
  double sup_norm() const { return sup_norm(0, values.size() - 1); }
};

}  // namespace fracnoether
