#pragma once

#include <Eigen/Dense>
#include <functional>
#include <variant>

#include "fracnoether/grid.hpp"
#include "fracnoether/trajectory.hpp"

namespace fracnoether {

struct Dirichlet {
  Eigen::VectorXd xa;
  Eigen::VectorXd xb;
};

/// x(a) = u0 and x'(a) = du0. The slope is imposed through the first forward
/// difference (X_1 - X_0)/h, which is only first-order accurate.
struct InitialValue {
  Eigen::VectorXd u0;
  Eigen::VectorXd du0;
};

/// D^alpha_{b-} cD^alpha_{a+} x = kappa x on the grid, per component.
struct LinearProblem {
  Grid grid;
  FractionalOrder alpha;
  std::size_t dim = 1;
  double kappa = -1.0;
  std::variant<Dirichlet, InitialValue> bc;
};

struct LinearSystem {
  Eigen::MatrixXd A;    // (N+1) x (N+1), shared by all components
  Eigen::MatrixXd rhs;  // (N+1) x n
};

/// Integral form
///   X_k - kappa (K X)_k + kappa r_k (K X)_N - (1 - r_k) X_0 - r_k X_N = 0,
/// K = I_{a+} I_{b-}, r_k = ((t_k - a)/(b - a))^alpha, for the interior rows.
/// Row 0 pins X_0; row N pins X_N or carries the slope condition.
LinearSystem assemble(const LinearProblem& problem);

struct SolveReport {
  Trajectory solution;
  double residual_norm;       // sup |A X - rhs|
  double condition_estimate;  // 1 / rcond of the LU factorization
};

/// Throws NumericalFailure when the condition estimate exceeds 1e12.
SolveReport solve(const LinearProblem& problem);

/// c1 e^{t-a} + c2 e^{-(t-a)} per component, fitted to x(a) = xa, x(b) = xb.
/// The exact alpha = 1, kappa = -1 solution.
class ClassicalReference {
 public:
  ClassicalReference(double a, double b, Eigen::VectorXd xa, Eigen::VectorXd xb);

  Eigen::VectorXd operator()(double t) const;
  Eigen::VectorXd second_derivative(double t) const;
  /// Coefficients on e^{t-a} and e^{-(t-a)}, one column per component.
  const Eigen::VectorXd& c1() const noexcept { return c1_; }
  const Eigen::VectorXd& c2() const noexcept { return c2_; }
  Trajectory sample(const Grid& grid) const;

 private:
  double a_;
  Eigen::VectorXd c1_;
  Eigen::VectorXd c2_;
};

ClassicalReference classical_reference(double a, double b, const Eigen::VectorXd& xa,
                                       const Eigen::VectorXd& xb);

}  // namespace fracnoether
