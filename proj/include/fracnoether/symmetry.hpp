#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracnoether/grid.hpp"
#include "fracnoether/lagrangian.hpp"
#include "fracnoether/trajectory.hpp"

namespace fracnoether {

/// One-parameter group (t, x) -> (phi0(s, t), phi1(s, x)) and its generator
/// X = zeta(t) d/dt + xi(x) d/dx.
struct GroupSpec {
  std::string name;
  std::function<double(double, double)> phi0;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> phi1;
  std::function<double(double)> zeta;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> xi;
  /// d zeta / dt; central difference of `zeta` when empty.
  std::function<double(double)> zeta_dot;
  /// Present for admissible groups: phi0(s, t) = e^{lambda s} t + beta(s).
  std::optional<double> lambda;
  std::function<double(double)> beta;

  double zeta_rate(double t) const;
};

GroupSpec time_translation();
/// phi0 = e^{rate s} t, identity in space. The group t e^{-cs} of the example2 problem is scaling(-c).
GroupSpec scaling(double rate);
/// e^{lambda s}(t - a) + a, identity in space.
GroupSpec localized_dilation(double lambda, double a);
/// e^{lambda s} t + beta(s), beta(s) = mu (e^{lambda s} - 1)/lambda (mu s when lambda = 0).
GroupSpec affine(double lambda, double mu);
/// Planar rotation of x by angle s; time untouched.
GroupSpec rotation();
/// t + s t^2. Not a group, not affine.
GroupSpec quadratic_time();

struct CheckReport {
  std::string check;
  bool passed = false;
  double max_violation = 0.0;
  std::size_t samples = 0;
  std::string context;
};

const std::vector<double>& default_s_samples();
/// 33 equally spaced points of [a, b].
std::vector<double> default_t_samples(double a, double b);

/// phi0_{s+s'} = phi0_s o phi0_{s'}; with beta present also the cocycle law
/// beta(s+s') = e^{lambda s} beta(s') + beta(s), and the multiplicative law
/// K(s+s') = K(s) K(s') on the measured slopes K(s) = d phi0_s / dt.
CheckReport check_group_law(const GroupSpec& g, const std::vector<double>& s_samples,
                            const std::vector<double>& t_samples, double tol);

/// Least-squares affine fit of phi0_s per s; reports the worst deviation, and
/// the slope mismatch against e^{lambda s} when lambda is known.
CheckReport check_admissible(const GroupSpec& g, const std::vector<double>& s_samples,
                             const std::vector<double>& t_samples, double tol);

/// phi0_s(a) = a for every s, then phi0_s(t) = e^{lambda s}(t - a) + a with one
/// lambda shared by all s.
CheckReport check_localization(const GroupSpec& g, double a, const std::vector<double>& s_samples,
                               const std::vector<double>& t_samples, double tol);

/// Compares the Caputo derivative of (phi1_s o x) o (phi0_s)^{-1}, taken on the
/// transformed nodes with base point phi0_s(a), against
/// caputo_left(phi1_s o x) (d phi0_s/dt)^{-alpha}. Throws DomainError when
/// phi0_s does not map the grid monotonically.
CheckReport check_chain_rule(const GroupSpec& g, const Trajectory& x, FractionalOrder alpha, double s,
                             double tol);

struct InvarianceOptions {
  /// Keep the base point of the transformed derivative at a (the variant in
  /// which the base point does not follow the group).
  bool fixed_base_point = false;
};

/// Both sides of the rewritten invariance identity by trapezoid quadrature,
/// gap normalized by |left| + 1. Only admissible groups are accepted.
CheckReport check_invariance(const LagrangianSpec& L, const GroupSpec& g, const Trajectory& x,
                             FractionalOrder alpha, const std::vector<double>& s_samples, double tol,
                             InvarianceOptions options = {});

/// zeta and xi against central differences of phi0, phi1 in s at s = 0.
CheckReport check_generator(const GroupSpec& g, const std::vector<double>& t_samples,
                            const std::vector<Eigen::VectorXd>& x_samples, double tol);

}  // namespace fracnoether
