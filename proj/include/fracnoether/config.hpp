#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "fracnoether/conventions.hpp"

namespace fracnoether {

enum class Problem { harmonic2d, oscillator, example2, custom };
enum class QuantityKind { noether, autonomous, oscillator, q_alpha };

/// Parsed `key = value` configuration. Optional fields left empty are filled
/// from the problem defaults by `resolve`.
struct RunConfig {
  Problem problem = Problem::custom;
  std::vector<double> alphas;
  std::size_t n_sub = 200;
  std::optional<double> omega;
  double a = 0.0;
  double b = 1.0;
  std::string bc;  // "dirichlet" or "initial"
  std::optional<Eigen::VectorXd> xa, xb, u0, du0;
  std::optional<double> kappa;
  std::string group;            // time_translation | dilation(c) | localized_dilation(l) | space_only | custom
  std::string custom_time_map;  // used when group = custom
  std::string outputs = ".";
  bool substitute_el = false;   // conslaw_variant = conslaw2
  Conventions conventions = Conventions::consistent();
  std::optional<QuantityKind> quantity;
  bool expect_conserved = false;
  double drift_tolerance = 5e-2;
  double check_tolerance = 1e-6;
};

std::string to_string(Problem p);
std::string to_string(QuantityKind q);

/// Throws ConfigError on unknown keys, duplicates, malformed values or
/// missing problem-specific keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Fills problem defaults and validates cross-field requirements.
RunConfig resolve(RunConfig cfg);

}  // namespace fracnoether
