#include "fracnoether/noether.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracnoether/differences.hpp"
#include "fracnoether/errors.hpp"
#include "fracnoether/operators.hpp"

namespace fracnoether {

namespace {

void require_dim(const LagrangianSpec& L, const Trajectory& x) {
  if (L.dim != x.dim()) throw DomainError("Lagrangian and trajectory dimensions differ");
  if (!x.fully_defined()) throw DomainError("trajectory has undefined nodes");
}

// Everything the quantities need, evaluated once along x.
struct Along {
  Trajectory v;
  NodeEvaluation e;
  Eigen::MatrixXd xdot;   // central differences
  Eigen::MatrixXd rate;   // D_{a+}[x']
  Eigen::MatrixXd right;  // D_{b-}[dL/dv]
};

Along evaluate(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha, const Conventions& conv) {
  const Grid& g = x.grid();
  Trajectory v = caputo_left(g, alpha, x);
  NodeEvaluation e = evaluate_along(L, x, v);
  const auto rows = static_cast<Eigen::Index>(x.size());
  const auto n = static_cast<Eigen::Index>(x.dim());
  Eigen::MatrixXd xdot(rows, n), rate(rows, n), right(rows, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd xj = x.values().col(j);
    xdot.col(j) = finite_difference(g, xj);
    rate.col(j) = velocity_rate(g, alpha, xj, v.values().col(j), conv.velocity_rate);
    right.col(j) = right_derivative(g, alpha, e.L_v.col(j), conv.right);
  }
  return Along{std::move(v), std::move(e), std::move(xdot), std::move(rate), std::move(right)};
}

// Rows of xi(x_k) and the Caputo derivative of that series.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> generator_field(const GroupSpec& g, const Trajectory& x,
                                                            FractionalOrder alpha) {
  Eigen::MatrixXd xi(x.values().rows(), x.values().cols());
  for (std::size_t k = 0; k < x.size(); ++k) xi.row(static_cast<Eigen::Index>(k)) = g.xi(x.state(k)).transpose();
  Eigen::MatrixXd dxi(xi.rows(), xi.cols());
  for (Eigen::Index j = 0; j < xi.cols(); ++j)
    dxi.col(j) = caputo_left(x.grid(), alpha, Eigen::VectorXd(xi.col(j)));
  return {std::move(xi), std::move(dxi)};
}

double factor(const Conventions& c, FractionalOrder alpha) { return c.alpha_factor ? alpha.value() : 1.0; }

std::string convention_note(const Conventions& c, bool substitute_el) {
  std::string s = "convention " + c.label();
  s += substitute_el ? "; EL-substituted form" : "; direct form";
  s += "; x' by central differences";
  return s;
}

}  // namespace

QuantitySeries noether_quantity(const LagrangianSpec& L, const GroupSpec& g, const Trajectory& x,
                                FractionalOrder alpha, const NoetherOptions& options) {
  require_dim(L, x);
  const Grid& grid = x.grid();
  const Conventions& conv = options.conventions;
  const Along A = evaluate(L, x, alpha, conv);
  const auto [xi, dxi] = generator_field(g, x, alpha);
  const double f = factor(conv, alpha);

  const std::size_t rows = x.size();
  std::vector<double> bracket(rows), head(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double t = grid[k];
    const double z = g.zeta(t), zd = g.zeta_rate(t);
    const Eigen::RowVectorXd Lv = A.e.L_v.row(kk);
    const Eigen::RowVectorXd dual = options.substitute_el ? Eigen::RowVectorXd(-A.e.L_x.row(kk))
                                                          : Eigen::RowVectorXd(A.right.row(kk));
    const Eigen::RowVectorXd move = A.xdot.row(kk) * z - xi.row(kk);
    const Eigen::RowVectorXd inner = z * A.rate.row(kk) + f * zd * A.v.values().row(kk) - dxi.row(kk);
    bracket[k] = dual.dot(move) - Lv.dot(inner);
    head[k] = A.e.L[kk] * z;
  }
  const std::vector<double> acc = cumulative_trapezoid(grid, bracket);
  std::vector<double> out(rows);
  for (std::size_t k = 0; k < rows; ++k) out[k] = head[k] + acc[k];
  QuantitySeries q(grid, std::move(out));
  q.notes.push_back(convention_note(conv, options.substitute_el));
  q.notes.push_back("group " + g.name);
  return q;
}

QuantitySeries autonomous_quantity(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha,
                                   const NoetherOptions& options) {
  require_dim(L, x);
  const Trajectory v = caputo_left(x.grid(), alpha, x);
  const NodeEvaluation e = evaluate_along(L, x, v);
  const double worst = e.L_t.cwiseAbs().maxCoeff();
  if (!(worst <= 1e-9)) {
    std::ostringstream os;
    os << "autonomous_quantity: Lagrangian depends on t (|dL/dt| up to " << worst << ")";
    throw DomainError(os.str());
  }
  return noether_quantity(L, time_translation(), x, alpha, options);
}

QuantitySeries oscillator_quantity(const Trajectory& u, double omega, FractionalOrder alpha,
                                   const Conventions& conv) {
  if (u.dim() != 1) throw DomainError("oscillator_quantity: needs a scalar path");
  if (!u.fully_defined()) throw DomainError("oscillator_quantity: path has undefined nodes");
  const Grid& g = u.grid();
  const Eigen::VectorXd x = u.component(0);
  const Eigen::VectorXd y = caputo_left(g, alpha, x);
  const Eigen::VectorXd up = finite_difference(g, x);
  const Eigen::VectorXd rate = velocity_rate(g, alpha, x, y, conv.velocity_rate);
  const Eigen::VectorXd right = right_derivative(g, alpha, y, conv.right);
  const std::size_t rows = u.size();
  std::vector<double> integrand(rows), out(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    integrand[k] = -rate[kk] * y[kk] + up[kk] * right[kk];
  }
  const std::vector<double> acc = cumulative_trapezoid(g, integrand);
  for (std::size_t k = 0; k < rows; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    out[k] = 0.5 * y[kk] * y[kk] - 0.5 * omega * omega * x[kk] * x[kk] + acc[k];
  }
  QuantitySeries q(g, std::move(out));
  q.notes.push_back(convention_note(conv, false));
  if (x[0] != 0.0) {
    std::ostringstream os;
    os << "warning: u(a) = " << x[0] << " != 0, Caputo and Riemann-Liouville velocities differ";
    q.notes.push_back(os.str());
  }
  return q;
}

QuantitySeries infinitesimal_criterion_residual(const LagrangianSpec& L, const GroupSpec& g,
                                                const Trajectory& x, FractionalOrder alpha,
                                                const Conventions& conv) {
  require_dim(L, x);
  const Grid& grid = x.grid();
  const Trajectory v = caputo_left(grid, alpha, x);
  const NodeEvaluation e = evaluate_along(L, x, v);
  const auto [xi, dxi] = generator_field(g, x, alpha);
  const double f = factor(conv, alpha);
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double z = g.zeta(grid[k]), zd = g.zeta_rate(grid[k]);
    out[k] = e.L_t[kk] * z + e.L_x.row(kk).dot(xi.row(kk)) + e.L[kk] * zd +
             e.L_v.row(kk).dot(-f * zd * v.values().row(kk) + dxi.row(kk));
  }
  QuantitySeries q(grid, std::move(out));
  q.notes.push_back(conv.alpha_factor ? "alpha weight on v . dL/dv" : "no alpha weight");
  return q;
}

QuantitySeries weak_theorem_residual(const LagrangianSpec& L, const GroupSpec& g, const Trajectory& x,
                                     FractionalOrder alpha, const Conventions& conv) {
  require_dim(L, x);
  const Grid& grid = x.grid();
  const Trajectory v = caputo_left(grid, alpha, x);
  const NodeEvaluation e = evaluate_along(L, x, v);
  const auto [xi, dxi] = generator_field(g, x, alpha);
  const auto rows = static_cast<Eigen::Index>(x.size());
  Eigen::VectorXd energy(rows);
  for (Eigen::Index k = 0; k < rows; ++k)
    energy[k] = (e.L[k] - v.values().row(k).dot(e.L_v.row(k))) * g.zeta(grid[static_cast<std::size_t>(k)]);
  const Eigen::VectorXd d = finite_difference(grid, energy);
  Eigen::MatrixXd right(rows, e.L_v.cols());
  for (Eigen::Index j = 0; j < e.L_v.cols(); ++j)
    right.col(j) = right_derivative(grid, alpha, e.L_v.col(j), conv.right);
  std::vector<double> out(x.size());
  for (Eigen::Index k = 0; k < rows; ++k)
    out[static_cast<std::size_t>(k)] = d[k] + e.L_v.row(k).dot(dxi.row(k)) - right.row(k).dot(xi.row(k));
  return QuantitySeries(grid, std::move(out));
}

DriftReport drift(const QuantitySeries& series, std::size_t first, std::size_t last) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = first; k <= last && k < series.size(); ++k) {
    if (!series.defined[k]) continue;
    lo = std::min(lo, series.values[k]);
    hi = std::max(hi, series.values[k]);
    sum += series.values[k];
    ++n;
  }
  if (n < 2) throw DomainError("drift: fewer than two defined nodes");
  const double mean = std::clamp(sum / static_cast<double>(n), lo, hi);
  return DriftReport{lo, hi, mean, (hi - lo) / std::max(std::abs(mean), 1e-12), series};
}

DriftReport drift(const QuantitySeries& series) { return drift(series, 0, series.size() - 1); }

}  // namespace fracnoether
