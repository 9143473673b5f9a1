#include "fracnoether/grid.hpp"

#include <cmath>
#include <string>

#include "fracnoether/errors.hpp"

namespace fracnoether {

Grid::Grid(double a, double b, std::size_t n_sub) : a_(a), b_(b), n_sub_(n_sub) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw DomainError("grid: require finite a < b, got [" + std::to_string(a) + ", " +
                      std::to_string(b) + "]");
  if (n_sub < 2) throw DomainError("grid: need at least 2 subintervals");
  h_ = (b - a) / static_cast<double>(n_sub);
  nodes_.resize(n_sub + 1);
  for (std::size_t k = 0; k < n_sub; ++k) nodes_[k] = a + static_cast<double>(k) * h_;
  nodes_[n_sub] = b;
}

Grid Grid::shifted(double offset) const {
  Grid g(a_ + offset, b_ + offset, n_sub_);
  g.h_ = h_;
  for (std::size_t k = 0; k < n_sub_; ++k) g.nodes_[k] = g.a_ + static_cast<double>(k) * h_;
  return g;
}

Grid make_grid(double a, double b, std::size_t n_sub) { return Grid(a, b, n_sub); }

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
}

}  // namespace fracnoether
