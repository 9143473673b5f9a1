#include "fracnoether/conventions.hpp"

#include "fracnoether/differences.hpp"
#include "fracnoether/operators.hpp"

namespace fracnoether {

std::string Conventions::label() const {
  std::string s = right == RightDerivative::caputo ? "right=caputo" : "right=riemann_liouville";
  s += velocity_rate == VelocityRate::derivative_of_caputo ? ";rate=d/dt(caputo)" : ";rate=caputo(d/dt)";
  s += alpha_factor ? ";alpha_factor=on" : ";alpha_factor=off";
  return s;
}

Eigen::VectorXd right_derivative(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f,
                                 Conventions::RightDerivative which) {
  return which == Conventions::RightDerivative::caputo ? caputo_right(grid, alpha, f)
                                                       : rl_right(grid, alpha, f);
}

Eigen::VectorXd velocity_rate(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& v, Conventions::VelocityRate which) {
  if (which == Conventions::VelocityRate::derivative_of_caputo) return finite_difference(grid, v);
  return caputo_left(grid, alpha, finite_difference(grid, x));
}

}  // namespace fracnoether
