#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracnoether {

/// Uniform partition a = t_0 < t_1 < ... < t_N = b.
class Grid {
 public:
  Grid(double a, double b, std::size_t n_sub);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double h() const noexcept { return h_; }
  std::size_t n_sub() const noexcept { return n_sub_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double length() const noexcept { return b_ - a_; }

  double operator[](std::size_t k) const noexcept { return nodes_[k]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  /// Same partition shifted by `offset` (step and node count preserved).
  Grid shifted(double offset) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_sub_;
  double h_;
  std::vector<double> nodes_;
};

/// Throws DomainError unless a < b and n_sub >= 2.
Grid make_grid(double a, double b, std::size_t n_sub);

/// Order of a fractional operator, restricted to (0, 1].
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);

  double value() const noexcept { return alpha_; }
  bool is_classical() const noexcept { return alpha_ == 1.0; }
  operator double() const noexcept { return alpha_; }

 private:
  double alpha_;
};

}  // namespace fracnoether
