#include "fracnoether/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracnoether/errors.hpp"

namespace fracnoether {

Trajectory::Trajectory(Grid grid, Eigen::MatrixXd values)
    : Trajectory(std::move(grid), std::move(values), std::vector<bool>{}) {}

Trajectory::Trajectory(Grid grid, Eigen::MatrixXd values, std::vector<bool> defined)
    : grid_(std::move(grid)), values_(std::move(values)), defined_(std::move(defined)) {
  // An empty mask means every node is defined.
  if (defined_.empty()) defined_.assign(static_cast<std::size_t>(values_.rows()), true);
  if (static_cast<std::size_t>(values_.rows()) != grid_.size())
    throw DomainError("trajectory: expected " + std::to_string(grid_.size()) + " rows, got " +
                      std::to_string(values_.rows()));
  if (values_.cols() < 1) throw DomainError("trajectory: dimension must be positive");
  if (defined_.size() != grid_.size()) throw DomainError("trajectory: mask length mismatch");
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    const auto row = values_.row(static_cast<Eigen::Index>(k));
    if (defined_[k]) {
      if (!row.allFinite())
        throw DomainError("trajectory: non-finite value at node " + std::to_string(k));
    } else {
      values_.row(static_cast<Eigen::Index>(k)).setConstant(std::numeric_limits<double>::quiet_NaN());
    }
  }
}

Trajectory Trajectory::sample(const Grid& grid, std::size_t dim,
                              const std::function<Eigen::VectorXd(double)>& f) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXd x = f(grid[k]);
    if (static_cast<std::size_t>(x.size()) != dim)
      throw DomainError("trajectory: sampler returned wrong dimension");
    v.row(static_cast<Eigen::Index>(k)) = x.transpose();
  }
  return Trajectory(grid, std::move(v));
}

Trajectory Trajectory::masked(const Grid& grid, Eigen::MatrixXd values) {
  std::vector<bool> mask(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index k = 0; k < values.rows(); ++k) mask[static_cast<std::size_t>(k)] = values.row(k).allFinite();
  return Trajectory(grid, std::move(values), std::move(mask));
}

Trajectory Trajectory::sample_scalar(const Grid& grid, const std::function<double(double)>& f) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(grid.size()), 1);
  for (std::size_t k = 0; k < grid.size(); ++k) v(static_cast<Eigen::Index>(k), 0) = f(grid[k]);
  return Trajectory(grid, std::move(v));
}

bool Trajectory::fully_defined() const noexcept {
  return std::all_of(defined_.begin(), defined_.end(), [](bool d) { return d; });
}

Trajectory Trajectory::reversed() const {
  Eigen::MatrixXd v = values_.colwise().reverse();
  std::vector<bool> d(defined_.rbegin(), defined_.rend());
  return Trajectory(grid_, std::move(v), std::move(d));
}

QuantitySeries::QuantitySeries(Grid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size())
    throw DomainError("quantity series: expected " + std::to_string(grid.size()) + " values");
  defined.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    defined[k] = std::isfinite(values[k]);
    if (!defined[k]) values[k] = std::numeric_limits<double>::quiet_NaN();
  }
}

std::size_t QuantitySeries::defined_count() const noexcept {
  return static_cast<std::size_t>(std::count(defined.begin(), defined.end(), true));
}

double QuantitySeries::sup_norm(std::size_t first, std::size_t last) const {
  double m = 0.0;
  for (std::size_t k = first; k <= last && k < values.size(); ++k)
    if (defined[k]) m = std::max(m, std::abs(values[k]));
  return m;
}

}  // namespace fracnoether
