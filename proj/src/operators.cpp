#include "fracnoether/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracnoether/differences.hpp"
#include "fracnoether/errors.hpp"

namespace fracnoether {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::left_integral: return "left_integral";
    case OperatorKind::right_integral: return "right_integral";
    case OperatorKind::left_caputo: return "left_caputo";
    case OperatorKind::right_caputo: return "right_caputo";
    case OperatorKind::left_rl: return "left_rl";
    case OperatorKind::right_rl: return "right_rl";
  }
  return "unknown";
}

OperatorMatrix::OperatorMatrix(OperatorKind kind, FractionalOrder alpha, Grid grid,
                               Eigen::MatrixXd entries, std::optional<std::size_t> undefined_node)
    : kind_(kind),
      alpha_(alpha),
      grid_(std::move(grid)),
      entries_(std::move(entries)),
      undefined_node_(undefined_node) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  if (entries_.rows() != n || entries_.cols() != n)
    throw DomainError("operator matrix: shape does not match grid");
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& f) const {
  if (static_cast<std::size_t>(f.size()) != grid_.size())
    throw DomainError("operator: input length does not match grid");
  // Missing inputs (NaN) only spoil the rows that actually weight them.
  Eigen::VectorXd clean = f;
  std::vector<Eigen::Index> missing;
  for (Eigen::Index j = 0; j < f.size(); ++j)
    if (!std::isfinite(f[j])) {
      missing.push_back(j);
      clean[j] = 0.0;
    }
  Eigen::VectorXd out = entries_ * clean;
  for (const Eigen::Index j : missing)
    for (Eigen::Index k = 0; k < out.size(); ++k)
      if (entries_(k, j) != 0.0) out[k] = std::numeric_limits<double>::quiet_NaN();
  if (undefined_node_) out[static_cast<Eigen::Index>(*undefined_node_)] = std::numeric_limits<double>::quiet_NaN();
  return out;
}

Trajectory OperatorMatrix::apply(const Trajectory& x) const {
  if (!(x.grid() == grid_)) throw DomainError("operator: trajectory lives on a different grid");
  if (!x.fully_defined()) throw DomainError("operator: input trajectory has undefined nodes");
  Eigen::MatrixXd out = entries_ * x.values();
  std::vector<bool> mask(grid_.size(), true);
  if (undefined_node_) mask[*undefined_node_] = false;
  return Trajectory(grid_, std::move(out), std::move(mask));
}

namespace {

// j^p for j = 0..n, computed once per matrix.
std::vector<double> index_powers(std::size_t n, double p) {
  std::vector<double> out(n + 1);
  out[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) out[j] = std::pow(static_cast<double>(j), p);
  return out;
}

// Reverses rows and columns: the image of a left operator under s -> a + b - s.
Eigen::MatrixXd flip(const Eigen::MatrixXd& m) { return m.colwise().reverse().rowwise().reverse(); }

Eigen::MatrixXd finite_difference_matrix(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double inv = 1.0 / (2.0 * grid.h());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    d(k, k - 1) = -inv;
    d(k, k + 1) = inv;
  }
  d(0, 0) = -3.0 * inv;
  d(0, 1) = 4.0 * inv;
  d(0, 2) = -inv;
  d(n - 1, n - 1) = 3.0 * inv;
  d(n - 1, n - 2) = -4.0 * inv;
  d(n - 1, n - 3) = inv;
  return d;
}

Eigen::MatrixXd left_integral_entries(const Grid& grid, double alpha) {
  const std::size_t n = grid.n_sub();
  const auto pw = index_powers(n, alpha);
  const double scale = std::pow(grid.h(), alpha) / std::tgamma(alpha + 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      // Exact integral of (t_k - s)^{alpha-1} / Gamma(alpha) over [t_i, t_{i+1}].
      const double w = 0.5 * (pw[k - i] - pw[k - i - 1]) * scale;
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) += w;
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i + 1)) += w;
    }
  }
  return m;
}

Eigen::MatrixXd left_caputo_entries(const Grid& grid, double alpha) {
  if (alpha == 1.0) return finite_difference_matrix(grid);
  const std::size_t n = grid.n_sub();
  const auto pw = index_powers(n, 1.0 - alpha);
  // (h^{1-alpha} / Gamma(2-alpha)) / h, the 1/h coming from the panel slope.
  const double scale = std::pow(grid.h(), -alpha) / std::tgamma(2.0 - alpha);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      const double c = (pw[k - i] - pw[k - i - 1]) * scale;
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i + 1)) += c;
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) -= c;
    }
  }
  return m;
}

void add_rl_boundary_column(Eigen::MatrixXd& m, const Grid& grid, double alpha) {
  // (t_k - a)^{-alpha} / Gamma(1 - alpha) multiplies x(a); row 0 is singular.
  const double g = std::tgamma(1.0 - alpha);
  for (std::size_t k = 1; k < grid.size(); ++k)
    m(static_cast<Eigen::Index>(k), 0) += std::pow(static_cast<double>(k) * grid.h(), -alpha) / g;
}

void require_same_grid(const Grid& grid, const Trajectory& x) {
  if (!(x.grid() == grid)) throw DomainError("trajectory is not sampled on the operator grid");
}

}  // namespace

OperatorMatrix left_integral_matrix(const Grid& grid, FractionalOrder alpha) {
  return OperatorMatrix(OperatorKind::left_integral, alpha, grid, left_integral_entries(grid, alpha));
}

OperatorMatrix right_integral_matrix(const Grid& grid, FractionalOrder alpha) {
  return OperatorMatrix(OperatorKind::right_integral, alpha, grid,
                        flip(left_integral_entries(grid, alpha)));
}

OperatorMatrix left_caputo_matrix(const Grid& grid, FractionalOrder alpha) {
  return OperatorMatrix(OperatorKind::left_caputo, alpha, grid, left_caputo_entries(grid, alpha));
}

OperatorMatrix right_caputo_matrix(const Grid& grid, FractionalOrder alpha) {
  return OperatorMatrix(OperatorKind::right_caputo, alpha, grid, flip(left_caputo_entries(grid, alpha)));
}

OperatorMatrix left_rl_matrix(const Grid& grid, FractionalOrder alpha) {
  Eigen::MatrixXd m = left_caputo_entries(grid, alpha);
  if (alpha.is_classical()) return OperatorMatrix(OperatorKind::left_rl, alpha, grid, std::move(m));
  add_rl_boundary_column(m, grid, alpha);
  return OperatorMatrix(OperatorKind::left_rl, alpha, grid, std::move(m), std::size_t{0});
}

OperatorMatrix right_rl_matrix(const Grid& grid, FractionalOrder alpha) {
  Eigen::MatrixXd m = left_caputo_entries(grid, alpha);
  if (alpha.is_classical())
    return OperatorMatrix(OperatorKind::right_rl, alpha, grid, flip(m));
  add_rl_boundary_column(m, grid, alpha);
  return OperatorMatrix(OperatorKind::right_rl, alpha, grid, flip(m), grid.n_sub());
}

Trajectory caputo_left(const Grid& grid, FractionalOrder alpha, const Trajectory& x) {
  require_same_grid(grid, x);
  return left_caputo_matrix(grid, alpha).apply(x);
}

Trajectory caputo_right(const Grid& grid, FractionalOrder alpha, const Trajectory& x) {
  require_same_grid(grid, x);
  return right_caputo_matrix(grid, alpha).apply(x);
}

Trajectory rl_left(const Grid& grid, FractionalOrder alpha, const Trajectory& x) {
  require_same_grid(grid, x);
  return left_rl_matrix(grid, alpha).apply(x);
}

Trajectory rl_right(const Grid& grid, FractionalOrder alpha, const Trajectory& x) {
  require_same_grid(grid, x);
  return right_rl_matrix(grid, alpha).apply(x);
}

Eigen::VectorXd caputo_left(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f) {
  return left_caputo_matrix(grid, alpha).apply(f);
}

Eigen::VectorXd caputo_right(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f) {
  return right_caputo_matrix(grid, alpha).apply(f);
}

Eigen::VectorXd rl_right(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f) {
  return right_rl_matrix(grid, alpha).apply(f);
}

CompositionReport check_composition(const Grid& grid, FractionalOrder alpha, const Trajectory& x) {
  require_same_grid(grid, x);
  const Eigen::MatrixXd integral = left_integral_entries(grid, alpha);
  const Eigen::MatrixXd caputo = left_caputo_entries(grid, alpha) * x.values();

  Eigen::MatrixXd rl = caputo;
  if (!alpha.is_classical()) {
    const double g = std::tgamma(1.0 - alpha);
    for (Eigen::Index j = 0; j < x.values().cols(); ++j) {
      const double xa = x.values()(0, j);
      for (std::size_t k = 1; k < grid.size(); ++k)
        rl(static_cast<Eigen::Index>(k), j) += std::pow(static_cast<double>(k) * grid.h(), -alpha) * xa / g;
      rl(0, j) = std::pow(grid.h(), -alpha) * xa / std::tgamma(2.0 - alpha);
    }
  }

  const Eigen::MatrixXd r1 = integral * caputo - (x.values().rowwise() - x.values().row(0));
  const Eigen::MatrixXd r2 = integral * rl - x.values();
  const auto n = static_cast<Eigen::Index>(grid.size());
  CompositionReport rep{0.0, 0.0};
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    rep.caputo_residual = std::max(rep.caputo_residual, r1.row(k).cwiseAbs().maxCoeff());
    rep.rl_residual = std::max(rep.rl_residual, r2.row(k).cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace fracnoether
