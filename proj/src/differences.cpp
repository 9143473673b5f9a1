#include "fracnoether/differences.hpp"

#include <cmath>

#include "fracnoether/errors.hpp"

namespace fracnoether {

Eigen::VectorXd finite_difference(const Grid& grid, const Eigen::VectorXd& f) {
  const Eigen::Index n = f.size();
  if (static_cast<std::size_t>(n) != grid.size())
    throw DomainError("finite_difference: length does not match grid");
  const double h = grid.h();
  Eigen::VectorXd d(n);
  for (Eigen::Index k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

namespace {

// Derivative at x0 of the quadratic through (x0,f0), (x1,f1), (x2,f2).
double quadratic_slope(double x0, double x1, double x2, double f0, double f1, double f2) {
  const double d01 = x0 - x1, d02 = x0 - x2, d12 = x1 - x2;
  return f0 * (1.0 / d01 + 1.0 / d02) - f1 * d02 / (d01 * d12) + f2 * d01 / (d02 * d12);
}

}  // namespace

Eigen::VectorXd finite_difference(std::span<const double> t, const Eigen::VectorXd& f) {
  const std::size_t n = t.size();
  if (n < 3 || static_cast<std::size_t>(f.size()) != n)
    throw DomainError("finite_difference: need at least 3 matching nodes");
  Eigen::VectorXd d(static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k + 1 < n; ++k)
    d[static_cast<Eigen::Index>(k)] =
        quadratic_slope(t[k], t[k - 1], t[k + 1], f[k], f[k - 1], f[k + 1]);
  d[0] = quadratic_slope(t[0], t[1], t[2], f[0], f[1], f[2]);
  d[static_cast<Eigen::Index>(n - 1)] =
      quadratic_slope(t[n - 1], t[n - 2], t[n - 3], f[n - 1], f[n - 2], f[n - 3]);
  return d;
}

double trapezoid(const Grid& grid, const Eigen::VectorXd& f) {
  if (static_cast<std::size_t>(f.size()) != grid.size())
    throw DomainError("trapezoid: length does not match grid");
  const Eigen::Index n = f.size();
  double s = 0.5 * (f[0] + f[n - 1]);
  for (Eigen::Index k = 1; k + 1 < n; ++k) s += f[k];
  return s * grid.h();
}

std::vector<double> cumulative_trapezoid(const Grid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw DomainError("cumulative_trapezoid: length does not match grid");
  std::vector<double> out(f.size(), 0.0);
  const double h = grid.h();
  for (std::size_t k = 1; k < f.size(); ++k) {
    const bool l = std::isfinite(f[k - 1]), r = std::isfinite(f[k]);
    double panel = 0.0;
    if (l && r)
      panel = 0.5 * h * (f[k - 1] + f[k]);
    else if (l)
      panel = h * f[k - 1];
    else if (r)
      panel = h * f[k];
    out[k] = out[k - 1] + panel;
  }
  return out;
}

}  // namespace fracnoether
