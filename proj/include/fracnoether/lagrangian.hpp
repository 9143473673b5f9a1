#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "fracnoether/conventions.hpp"
#include "fracnoether/grid.hpp"
#include "fracnoether/trajectory.hpp"

namespace fracnoether {

/// L(t, x, v) with optional closed-form partials. Missing partials fall back
/// to central differences of `eval`. All closures must be pure.
struct LagrangianSpec {
  using Scalar = std::function<double(double, const Eigen::VectorXd&, const Eigen::VectorXd&)>;
  using Vector = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

  std::size_t dim = 1;
  Scalar eval;
  Scalar d_t;
  Vector d_x;
  Vector d_v;

  double value(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  double partial_t(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  Eigen::VectorXd partial_x(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  Eigen::VectorXd partial_v(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;

  /// Copy with the closed-form partials dropped (forces the difference fallback).
  LagrangianSpec without_partials() const;
};

/// Largest relative mismatch |closed form - central difference| / max(1, |difference|)
/// over `samples` random points with t, x, v drawn uniformly from [lo, hi].
double max_partial_mismatch(const LagrangianSpec& L, std::mt19937_64& rng, std::size_t samples,
                            double lo, double hi);

/// 1/2 |v|^2 - kappa/2 |x|^2, whose Euler-Lagrange equation is D_{b-} cD_{a+} x = kappa x.
LagrangianSpec quadratic_lagrangian(std::size_t dim, double kappa);
/// 1/2 (|x|^2 + |v|^2).
LagrangianSpec harmonic_lagrangian(std::size_t dim);
/// 1/2 v^2 - omega^2/2 u^2.
LagrangianSpec oscillator_lagrangian(double omega);
/// v1^{1/alpha} x2 - v2^{1/alpha} x1. Undefined (NaN) for negative velocities.
LagrangianSpec homogeneous_lagrangian(FractionalOrder alpha);

/// L and its partials evaluated at (t_k, x_k, v_k) for every node.
struct NodeEvaluation {
  Eigen::VectorXd L;    // N+1
  Eigen::VectorXd L_t;  // N+1
  Eigen::MatrixXd L_x;  // (N+1) x n
  Eigen::MatrixXd L_v;  // (N+1) x n
};

NodeEvaluation evaluate_along(const LagrangianSpec& L, const Trajectory& x, const Trajectory& v);

/// Trapezoid quadrature of L(t, x, cD^alpha_{a+} x).
double action(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha);

/// D^alpha_{b-}(dL/dv) + dL/dx per node, with the velocity slot filled by the
/// left Caputo derivative.
Trajectory el_residual(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha,
                       const Conventions& conv = Conventions::consistent());

/// L(t, x, v / w^alpha) * w, treating time as a dependent variable.
class ExtendedLagrangianSpec {
 public:
  ExtendedLagrangianSpec(LagrangianSpec base, FractionalOrder alpha);

  const LagrangianSpec& base() const noexcept { return base_; }
  FractionalOrder alpha() const noexcept { return alpha_; }

  double value(double t, const Eigen::VectorXd& x, double w, const Eigen::VectorXd& v) const;
  double partial_t(double t, const Eigen::VectorXd& x, double w, const Eigen::VectorXd& v) const;
  Eigen::VectorXd partial_x(double t, const Eigen::VectorXd& x, double w, const Eigen::VectorXd& v) const;
  Eigen::VectorXd partial_v(double t, const Eigen::VectorXd& x, double w, const Eigen::VectorXd& v) const;
  double partial_w(double t, const Eigen::VectorXd& x, double w, const Eigen::VectorXd& v) const;

 private:
  LagrangianSpec base_;
  FractionalOrder alpha_;
};

ExtendedLagrangianSpec extend(const LagrangianSpec& L, FractionalOrder alpha);

struct ExtendedResidual {
  Trajectory first;        // first extended equation: the ordinary residual
  QuantitySeries second;   // dL/dt - d/dt (L - f v . dL/dv), f = alpha or 1
};

/// Both extended Euler-Lagrange equations restricted to t(tau) = tau, w = 1.
ExtendedResidual extended_el_residual(const ExtendedLagrangianSpec& E, const Trajectory& x,
                                      const Conventions& conv = Conventions::consistent());

/// L - cD^alpha x . dL/dv per node; equals 1/2(|x|^2 - |v|^2) for the harmonic Lagrangian.
QuantitySeries second_el_quantity(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha);

}  // namespace fracnoether
