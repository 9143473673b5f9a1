#pragma once

#include "fracnoether/conventions.hpp"
#include "fracnoether/lagrangian.hpp"
#include "fracnoether/symmetry.hpp"
#include "fracnoether/trajectory.hpp"

namespace fracnoether {

struct NoetherOptions {
  /// Replace D^alpha_{b-}[dL/dv] by -dL/dx (the form with the Euler-Lagrange
  /// equation already substituted).
  bool substitute_el = false;
  Conventions conventions = Conventions::consistent();
};

/// I(t_k) = L zeta + cumulative trapezoid of
///   D_{b-}[dL/dv] . (x' zeta - xi) - dL/dv . (zeta D_{a+}[x'] + f zeta' v - cD_{a+}(xi)),
/// with v the Caputo velocity, x' by central differences, f = alpha or 1.
QuantitySeries noether_quantity(const LagrangianSpec& L, const GroupSpec& g, const Trajectory& x,
                                FractionalOrder alpha, const NoetherOptions& options = {});

/// Time-translation case. Throws DomainError if dL/dt is not identically zero
/// on sampled states of x.
QuantitySeries autonomous_quantity(const LagrangianSpec& L, const Trajectory& x, FractionalOrder alpha,
                                   const NoetherOptions& options = {});

/// 1/2 (D u)^2 - omega^2/2 u^2 + int (-D[u'] D u + u' D_{b-}(D u)) for a scalar path.
/// A note is attached when u(a) != 0.
QuantitySeries oscillator_quantity(const Trajectory& u, double omega, FractionalOrder alpha,
                                   const Conventions& conv = Conventions::consistent());

/// dL/dt zeta + dL/dx . xi + L zeta' + dL/dv . (-f v zeta' + cD_{a+}(xi)).
QuantitySeries infinitesimal_criterion_residual(const LagrangianSpec& L, const GroupSpec& g,
                                                const Trajectory& x, FractionalOrder alpha,
                                                const Conventions& conv = Conventions::consistent());

/// d/dt[(L - v . dL/dv) zeta] + dL/dv . cD_{a+}(xi) - D_{b-}(dL/dv) . xi.
QuantitySeries weak_theorem_residual(const LagrangianSpec& L, const GroupSpec& g, const Trajectory& x,
                                     FractionalOrder alpha, const Conventions& conv = Conventions::consistent());

struct DriftReport {
  double min;
  double max;
  double mean;
  double relative_drift;  // (max - min) / max(|mean|, 1e-12)
  QuantitySeries series;
};

/// Statistics over the defined nodes whose index lies in [first, last].
DriftReport drift(const QuantitySeries& series, std::size_t first, std::size_t last);
DriftReport drift(const QuantitySeries& series);

}  // namespace fracnoether
