#pragma once

#include <Eigen/Dense>
#include <string>

#include "fracnoether/grid.hpp"

namespace fracnoether {

/// Which discrete operators stand behind the unmarked derivatives that appear
/// in Euler-Lagrange residuals and conservation laws.
struct Conventions {
  /// Operator used for D^alpha_{b-}.
  enum class RightDerivative { caputo, riemann_liouville };
  /// How D^alpha_{a+}[x'] is formed: d/dt of the Caputo velocity (which equals
  /// the Riemann-Liouville derivative of x'), or Caputo of the differenced x'.
  enum class VelocityRate { derivative_of_caputo, caputo_of_derivative };

  RightDerivative right = RightDerivative::caputo;
  VelocityRate velocity_rate = VelocityRate::derivative_of_caputo;
  /// Weight alpha on the v . dL/dv term produced by the w^{-alpha} dilation
  /// factor (second extended Euler-Lagrange equation, infinitesimal criterion,
  /// zeta-dot term of the conservation law). Off reproduces the unweighted forms.
  bool alpha_factor = true;

  /// Caputo right derivative, d/dt of the Caputo velocity, alpha weight on.
  /// These are the operators the integral-form solver actually inverts.
  static Conventions consistent() { return {}; }
  /// Caputo left derivatives applied directly to x', Riemann-Liouville right
  /// derivative, no alpha weight.
  static Conventions literal() {
    return {RightDerivative::riemann_liouville, VelocityRate::caputo_of_derivative, false};
  }

  std::string label() const;

  friend bool operator==(const Conventions&, const Conventions&) = default;
};

/// D^alpha_{b-} of a node series under the chosen convention (NaN where undefined).
Eigen::VectorXd right_derivative(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& f,
                                 Conventions::RightDerivative which);

/// D^alpha_{a+}[x'] for one component, given x and its Caputo velocity v.
Eigen::VectorXd velocity_rate(const Grid& grid, FractionalOrder alpha, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& v, Conventions::VelocityRate which);

}  // namespace fracnoether
