#include "fracnoether/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracnoether/differences.hpp"
#include "fracnoether/errors.hpp"
#include "fracnoether/operators.hpp"

namespace fracnoether {

namespace {

double fd_step(double at) { return 1e-6 * std::max(1.0, std::abs(at)); }

void require_dim(const LagrangianSpec& L, const Trajectory& x) {
  if (L.dim != x.dim())
    throw DomainError("Lagrangian dimension " + std::to_string(L.dim) +
                      " does not match trajectory dimension " + std::to_string(x.dim()));
}

}  // namespace

double LagrangianSpec::value(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  return eval(t, x, v);
}

double LagrangianSpec::partial_t(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  if (d_t) return d_t(t, x, v);
  const double e = fd_step(t);
  return (eval(t + e, x, v) - eval(t - e, x, v)) / (2.0 * e);
}

Eigen::VectorXd LagrangianSpec::partial_x(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  if (d_x) return d_x(t, x, v);
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double e = fd_step(x[i]);
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += e;
    xm[i] -= e;
    g[i] = (eval(t, xp, v) - eval(t, xm, v)) / (2.0 * e);
  }
  return g;
}

Eigen::VectorXd LagrangianSpec::partial_v(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  if (d_v) return d_v(t, x, v);
  Eigen::VectorXd g(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double e = fd_step(v[i]);
    Eigen::VectorXd vp = v, vm = v;
    vp[i] += e;
    vm[i] -= e;
    g[i] = (eval(t, x, vp) - eval(t, x, vm)) / (2.0 * e);
  }
  return g;
}

LagrangianSpec LagrangianSpec::without_partials() const { return LagrangianSpec{dim, eval, {}, {}, {}}; }

double max_partial_mismatch(const LagrangianSpec& L, std::mt19937_64& rng, std::size_t samples,
                            double lo, double hi) {
  const LagrangianSpec fd = L.without_partials();
  std::uniform_real_distribution<double> u(lo, hi);
  const auto n = static_cast<Eigen::Index>(L.dim);
  double worst = 0.0;
  auto mismatch = [](double exact, double approx) {
    return std::abs(exact - approx) / std::max(1.0, std::abs(approx));
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = u(rng);
    Eigen::VectorXd x(n), v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = u(rng);
      v[i] = u(rng);
    }
    worst = std::max(worst, mismatch(L.partial_t(t, x, v), fd.partial_t(t, x, v)));
    const Eigen::VectorXd gx = L.partial_x(t, x, v), fx = fd.partial_x(t, x, v);
    const Eigen::VectorXd gv = L.partial_v(t, x, v), fv = fd.partial_v(t, x, v);
    for (Eigen::Index i = 0; i < n; ++i) {
      worst = std::max(worst, mismatch(gx[i], fx[i]));
      worst = std::max(worst, mismatch(gv[i], fv[i]));
    }
  }
  return worst;
}

LagrangianSpec quadratic_lagrangian(std::size_t dim, double kappa) {
  LagrangianSpec L;
  L.dim = dim;
  L.eval = [kappa](double, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return 0.5 * v.squaredNorm() - 0.5 * kappa * x.squaredNorm();
  };
  L.d_t = [](double, const Eigen::VectorXd&, const Eigen::VectorXd&) { return 0.0; };
  L.d_x = [kappa](double, const Eigen::VectorXd& x, const Eigen::VectorXd&) -> Eigen::VectorXd {
    return -kappa * x;
  };
  L.d_v = [](double, const Eigen::VectorXd&, const Eigen::VectorXd& v) -> Eigen::VectorXd { return v; };
  return L;
}

LagrangianSpec harmonic_lagrangian(std::size_t dim) { return quadratic_lagrangian(dim, -1.0); }

LagrangianSpec oscillator_lagrangian(double omega) { return quadratic_lagrangian(1, omega * omega); }

LagrangianSpec homogeneous_lagrangian(FractionalOrder alpha) {
  const double p = 1.0 / alpha.value();
  // v^q is only taken for v >= 0, except at alpha = 1 where L is linear in v.
  auto pw = [classical = alpha.is_classical()](double v, double q) {
    return v < 0.0 && !classical ? std::numeric_limits<double>::quiet_NaN() : std::pow(v, q);
  };
  LagrangianSpec L;
  L.dim = 2;
  L.eval = [p, pw](double, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return pw(v[0], p) * x[1] - pw(v[1], p) * x[0];
  };
  L.d_t = [](double, const Eigen::VectorXd&, const Eigen::VectorXd&) { return 0.0; };
  L.d_x = [p, pw](double, const Eigen::VectorXd&, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return Eigen::Vector2d(-pw(v[1], p), pw(v[0], p));
  };
  L.d_v = [p, pw](double, const Eigen::VectorXd& x, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return Eigen::Vector2d(p * pw(v[0], p - 1.0) * x[1], -p * pw(v[1], p - 1.0) * x[0]);
  };
  return L;
}

NodeEvaluation evaluate_along(const LagrangianSpec& L, const Trajectory& x, const Trajectory& v) {
  require_dim(L, x);
  if (!(x.grid() == v.grid()) || x.dim() != v.dim())
    throw DomainError("evaluate_along: position and velocity shapes differ");
  const auto rows = static_cast<Eigen::Index>(x.size());
  const auto n = static_cast<Eigen::Index>(x.dim());
  NodeEvaluation e{Eigen::VectorXd(rows), Eigen::VectorXd(rows), Eigen::MatrixXd(rows, n),
                   Eigen::MatrixXd(rows, n)};
  const Grid& g = x.grid();
  for (Eigen::Index k = 0; k < rows; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Eigen::VectorXd xk = x.state(ku), vk = v.state(ku);
    e.L[k] = L.value(g[ku], xk, vk);
    e.L_t[k] = L.partial_t(g[ku], xk, vk);
    e.L_x.row(k) = L.partial_x(g[ku], xk, vk).transpose();
    e.L_v.row(k) = L.partial_v(g[ku], xk, vk).transpose();
  }
  return e;
}

double action(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha) {
  require_dim(L, x);
  const Grid& g = x.grid();
  const Trajectory v = caputo_left(g, alpha, x);
  Eigen::VectorXd f(static_cast<Eigen::Index>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) {
    f[static_cast<Eigen::Index>(k)] = L.value(g[k], x.state(k), v.state(k));
    if (!std::isfinite(f[static_cast<Eigen::Index>(k)])) {
      std::ostringstream msg;
      msg << "action: non-finite integrand at node " << k << " (t = " << g[k] << ")";
      throw NumericalFailure(msg.str());
    }
  }
  return trapezoid(g, f);
}

namespace {

Trajectory residual_from_partials(const Grid& g, FractionalOrder alpha, const Eigen::MatrixXd& L_x,
                                  const Eigen::MatrixXd& L_v, const Conventions& conv) {
  Eigen::MatrixXd r(L_x.rows(), L_x.cols());
  for (Eigen::Index j = 0; j < L_x.cols(); ++j)
    r.col(j) = right_derivative(g, alpha, L_v.col(j), conv.right) + L_x.col(j);
  return Trajectory::masked(g, std::move(r));
}

}  // namespace

Trajectory el_residual(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha,
                       const Conventions& conv) {
  require_dim(L, x);
  const Trajectory v = caputo_left(x.grid(), alpha, x);
  const NodeEvaluation e = evaluate_along(L, x, v);
  return residual_from_partials(x.grid(), alpha, e.L_x, e.L_v, conv);
}

ExtendedLagrangianSpec::ExtendedLagrangianSpec(LagrangianSpec base, FractionalOrder alpha)
    : base_(std::move(base)), alpha_(alpha) {
  if (!base_.eval) throw DomainError("extend: Lagrangian has no evaluator");
}

namespace {

void require_positive(double w) {
  if (!(w > 0.0)) throw DomainError("extended Lagrangian: w must be positive, got " + std::to_string(w));
}

}  // namespace

double ExtendedLagrangianSpec::value(double t, const Eigen::VectorXd& x, double w,
                                     const Eigen::VectorXd& v) const {
  require_positive(w);
  return base_.value(t, x, v / std::pow(w, alpha_.value())) * w;
}

double ExtendedLagrangianSpec::partial_t(double t, const Eigen::VectorXd& x, double w,
                                         const Eigen::VectorXd& v) const {
  require_positive(w);
  return base_.partial_t(t, x, v / std::pow(w, alpha_.value())) * w;
}

Eigen::VectorXd ExtendedLagrangianSpec::partial_x(double t, const Eigen::VectorXd& x, double w,
                                                  const Eigen::VectorXd& v) const {
  require_positive(w);
  return base_.partial_x(t, x, v / std::pow(w, alpha_.value())) * w;
}

Eigen::VectorXd ExtendedLagrangianSpec::partial_v(double t, const Eigen::VectorXd& x, double w,
                                                  const Eigen::VectorXd& v) const {
  require_positive(w);
  return std::pow(w, 1.0 - alpha_.value()) * base_.partial_v(t, x, v / std::pow(w, alpha_.value()));
}

double ExtendedLagrangianSpec::partial_w(double t, const Eigen::VectorXd& x, double w,
                                         const Eigen::VectorXd& v) const {
  require_positive(w);
  const Eigen::VectorXd u = v / std::pow(w, alpha_.value());
  return base_.value(t, x, u) - alpha_.value() * u.dot(base_.partial_v(t, x, u));
}

ExtendedLagrangianSpec extend(const LagrangianSpec& L, FractionalOrder alpha) {
  return ExtendedLagrangianSpec(L, alpha);
}

ExtendedResidual extended_el_residual(const ExtendedLagrangianSpec& E, const Trajectory& x,
                                      const Conventions& conv) {
  require_dim(E.base(), x);
  const Grid& g = x.grid();
  const FractionalOrder alpha = E.alpha();
  const Trajectory v = caputo_left(g, alpha, x);
  const auto rows = static_cast<Eigen::Index>(g.size());
  const auto n = static_cast<Eigen::Index>(x.dim());

  // On U: t(tau) = tau, w = 1.
  Eigen::MatrixXd Lx(rows, n), Lv(rows, n);
  Eigen::VectorXd Lt(rows), mixed(rows);
  const double f = conv.alpha_factor ? alpha.value() : 1.0;
  for (Eigen::Index k = 0; k < rows; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Eigen::VectorXd xk = x.state(ku), vk = v.state(ku);
    Lx.row(k) = E.partial_x(g[ku], xk, 1.0, vk).transpose();
    Lv.row(k) = E.partial_v(g[ku], xk, 1.0, vk).transpose();
    Lt[k] = E.partial_t(g[ku], xk, 1.0, vk);
    mixed[k] = E.base().value(g[ku], xk, vk) - f * vk.dot(E.base().partial_v(g[ku], xk, vk));
  }
  const Eigen::VectorXd second = Lt - finite_difference(g, mixed);
  QuantitySeries q(g, std::vector<double>(second.begin(), second.end()));
  q.notes.push_back(conv.alpha_factor ? "mixed term weighted by alpha" : "mixed term unweighted");
  return ExtendedResidual{residual_from_partials(g, alpha, Lx, Lv, conv), std::move(q)};
}

QuantitySeries second_el_quantity(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha) {
  require_dim(L, x);
  const Trajectory v = caputo_left(x.grid(), alpha, x);
  const NodeEvaluation e = evaluate_along(L, x, v);
  std::vector<double> q(x.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    q[k] = e.L[kk] - v.values().row(kk).dot(e.L_v.row(kk));
  }
  return QuantitySeries(x.grid(), std::move(q));
}

}  // namespace fracnoether
