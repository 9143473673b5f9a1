#include "fracnoether/presets.hpp"

#include <regex>
#include <sstream>

#include "fracnoether/errors.hpp"

namespace fracnoether {

namespace {

std::optional<std::vector<double>> call_args(const std::string& spec, const std::string& name) {
  static const std::regex call(R"(^\s*([a-z_]+)\s*\(([^)]*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, call) || m[1] != name) return std::nullopt;
  std::vector<double> out;
  std::stringstream ss(m[2].str());
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("group '" + spec + "': bad argument '" + item + "'");
    }
  }
  return out;
}

GroupSpec one_arg(const std::string& spec, const std::vector<double>& args, auto make) {
  if (args.size() != 1) throw ConfigError("group '" + spec + "': expected one argument");
  return make(args[0]);
}

}  // namespace

GroupSpec parse_group(const std::string& spec, const std::string& custom_time_map, double a) {
  if (spec == "custom") {
    if (custom_time_map.empty()) throw ConfigError("group = custom needs custom_time_map");
    if (custom_time_map == "custom") throw ConfigError("custom_time_map cannot be 'custom'");
    return parse_group(custom_time_map, "", a);
  }
  if (spec == "time_translation" || spec == "translation") return time_translation();
  if (spec == "space_only" || spec == "rotation") return rotation();
  if (spec == "quadratic") return quadratic_time();
  if (auto args = call_args(spec, "dilation"))
    return one_arg(spec, *args, [](double c) {
      GroupSpec g = scaling(-c);
      std::ostringstream name;
      name << "dilation(" << c << ")";
      g.name = name.str();
      return g;
    });
  if (auto args = call_args(spec, "localized_dilation"))
    return one_arg(spec, *args, [a](double l) { return localized_dilation(l, a); });
  if (auto args = call_args(spec, "affine")) {
    if (args->size() != 2) throw ConfigError("group '" + spec + "': expected two arguments");
    return affine((*args)[0], (*args)[1]);
  }
  throw ConfigError("unknown group '" + spec + "'");
}

std::size_t problem_dim(const RunConfig& cfg) {
  switch (cfg.problem) {
    case Problem::harmonic2d:
    case Problem::example2: return 2;
    case Problem::oscillator: return 1;
    case Problem::custom: return static_cast<std::size_t>(cfg.bc == "initial" ? cfg.u0->size() : cfg.xa->size());
  }
  return 1;
}

LagrangianSpec problem_lagrangian(const RunConfig& cfg, FractionalOrder alpha) {
  switch (cfg.problem) {
    case Problem::harmonic2d: return harmonic_lagrangian(2);
    case Problem::oscillator: return oscillator_lagrangian(*cfg.omega);
    case Problem::example2: return homogeneous_lagrangian(alpha);
    case Problem::custom: return quadratic_lagrangian(problem_dim(cfg), *cfg.kappa);
  }
  throw ConfigError("unknown problem");
}

std::optional<LinearProblem> linear_problem(const RunConfig& cfg, const Grid& grid, FractionalOrder alpha) {
  if (cfg.problem == Problem::example2) return std::nullopt;
  const std::size_t n = problem_dim(cfg);
  LinearProblem p{grid, alpha, n, *cfg.kappa, Dirichlet{}};
  if (cfg.bc == "dirichlet") {
    if (static_cast<std::size_t>(cfg.xa->size()) != n) throw ConfigError("keys 'xa'/'xb': wrong length for this problem");
    p.bc = Dirichlet{*cfg.xa, *cfg.xb};
  } else {
    if (static_cast<std::size_t>(cfg.u0->size()) != n) throw ConfigError("keys 'u0'/'du0': wrong length for this problem");
    p.bc = InitialValue{*cfg.u0, *cfg.du0};
  }
  return p;
}

Trajectory example2_probe_path(const Grid& grid) {
  return Trajectory::sample(grid, 2, [](double t) -> Eigen::VectorXd { return Eigen::Vector2d(1.0 + t, 1.0 + t * t); });
}

PreparedPath prepare_path(const RunConfig& cfg, const Grid& grid, FractionalOrder alpha) {
  const auto problem = linear_problem(cfg, grid, alpha);
  if (!problem) return PreparedPath{example2_probe_path(grid), std::nullopt};
  SolveReport report = solve(*problem);
  Trajectory path = report.solution;
  return PreparedPath{std::move(path), std::move(report)};
}

}  // namespace fracnoether
