#pragma once

#include <optional>
#include <string>

#include "fracnoether/config.hpp"
#include "fracnoether/lagrangian.hpp"
#include "fracnoether/solver.hpp"
#include "fracnoether/symmetry.hpp"

namespace fracnoether {

/// time_translation, dilation(c) (= t e^{-cs}), localized_dilation(l) (about a),
/// space_only (planar rotation), affine(l, m), quadratic (t + s t^2).
/// `custom` reads the map from `custom_time_map`. Throws ConfigError.
GroupSpec parse_group(const std::string& spec, const std::string& custom_time_map, double a);

std::size_t problem_dim(const RunConfig& cfg);
LagrangianSpec problem_lagrangian(const RunConfig& cfg, FractionalOrder alpha);

/// Empty for example2, whose Euler-Lagrange equation is nonlinear.
std::optional<LinearProblem> linear_problem(const RunConfig& cfg, const Grid& grid, FractionalOrder alpha);

/// (1 + t, 1 + t^2): increasing components keep the example2 velocities positive.
Trajectory example2_probe_path(const Grid& grid);

struct PreparedPath {
  Trajectory path;
  std::optional<SolveReport> solve;
};

/// Solve output for the linear problems, the probe path for example2.
PreparedPath prepare_path(const RunConfig& cfg, const Grid& grid, FractionalOrder alpha);

}  // namespace fracnoether
