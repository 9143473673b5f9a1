#include "fracnoether/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "fracnoether/csv.hpp"
#include "fracnoether/errors.hpp"
#include "fracnoether/noether.hpp"
#include "fracnoether/presets.hpp"

namespace fracnoether {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers. Results are stored
// by index, so output order never depends on scheduling. The exception of the
// lowest failing index is rethrown.
template <class R>
std::vector<R> sweep(std::size_t n, const std::function<R(std::size_t)>& job) {
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(job(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t t = std::min(n, sweep_threads());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<std::string> run_comments(const RunConfig& cfg, const std::string& command) {
  std::ostringstream head, tol;
  head << "fracnoether " << command << " problem=" << to_string(cfg.problem) << " n_sub=" << cfg.n_sub
       << " interval=[" << format_short(cfg.a) << "," << format_short(cfg.b) << "]";
  tol << "drift_tolerance=" << format_short(cfg.drift_tolerance)
      << " check_tolerance=" << format_short(cfg.check_tolerance);
  std::vector<std::string> c{head.str(), "convention " + cfg.conventions.label(), tol.str()};
  if (cfg.problem != Problem::example2 && cfg.bc == "initial")
    c.push_back("u'(a) imposed by the forward difference (X_1 - X_0)/h");
  return c;
}

std::vector<std::string> t_and_columns(const std::string& stem, std::size_t n) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 1; i <= n; ++i) h.push_back(stem + std::to_string(i));
  return h;
}

CsvTable node_table(const Trajectory& x, const std::string& stem) {
  CsvTable t;
  t.header = t_and_columns(stem, x.dim());
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<std::string> row{format_real(x.grid()[k])};
    for (std::size_t j = 0; j < x.dim(); ++j)
      row.push_back(x.defined(k) ? format_real(x.values()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)))
                                 : std::string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Grid config_grid(const RunConfig& cfg) { return make_grid(cfg.a, cfg.b, cfg.n_sub); }

std::filesystem::path ensure_dir(const std::filesystem::path& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out.string() + "': " + ec.message());
  return out;
}

struct Written {
  std::string name;
  std::string content;
};

void write_all(const std::filesystem::path& out, const std::vector<Written>& files, std::ostream& log) {
  ensure_dir(out);
  for (const auto& f : files) {
    write_file(out / f.name, f.content);
    log << "wrote " << (out / f.name).string() << "\n";
  }
}

}  // namespace

std::size_t sweep_threads() {
  if (const char* env = std::getenv("FRACNOETHER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("FRACNOETHER_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  if (cfg.problem == Problem::example2)
    throw ConfigError("solve: example2 has a nonlinear Euler-Lagrange equation; only linear problems are solved");
  const Grid grid = config_grid(cfg);
  const auto comments = run_comments(cfg, "solve");
  auto files = sweep<std::vector<Written>>(cfg.alphas.size(), [&](std::size_t i) {
    const FractionalOrder alpha(cfg.alphas[i]);
    const PreparedPath p = prepare_path(cfg, grid, alpha);
    const Trajectory r = el_residual(problem_lagrangian(cfg, alpha), p.path, alpha, cfg.conventions);
    std::vector<std::string> c = comments;
    c.push_back("alpha=" + format_alpha(alpha) + " system_residual=" + format_real(p.solve->residual_norm) +
                " condition_estimate=" + format_real(p.solve->condition_estimate));
    CsvTable sol = node_table(p.path, "x");
    sol.comments = c;
    CsvTable res = node_table(r, "r");
    res.comments = c;
    res.comments.push_back("Euler-Lagrange residual; empty fields mark undefined nodes");
    return std::vector<Written>{{"solution_alpha" + format_alpha(alpha) + ".csv", sol.str()},
                                {"residual_alpha" + format_alpha(alpha) + ".csv", res.str()}};
  });
  std::vector<Written> flat;
  for (auto& f : files) flat.insert(flat.end(), f.begin(), f.end());
  write_all(out, flat, log);
  return exit_ok;
}

int cmd_noether(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  const Grid grid = config_grid(cfg);
  const GroupSpec group = parse_group(cfg.group, cfg.custom_time_map, cfg.a);
  const QuantityKind kind = *cfg.quantity;
  auto comments = run_comments(cfg, "noether");
  comments.push_back("quantity=" + to_string(kind) + " group=" + group.name +
                     (cfg.substitute_el ? " conslaw_variant=conslaw2" : " conslaw_variant=conslaw"));
  if (cfg.problem == Problem::example2) comments.push_back("path: probe (1 + t, 1 + t^2), not a solution");

  struct Result {
    Written file;
    DriftReport drift;
  };
  auto results = sweep<Result>(cfg.alphas.size(), [&](std::size_t i) {
    const FractionalOrder alpha(cfg.alphas[i]);
    const PreparedPath p = prepare_path(cfg, grid, alpha);
    const LagrangianSpec L = problem_lagrangian(cfg, alpha);
    const NoetherOptions opt{cfg.substitute_el, cfg.conventions};
    QuantitySeries q = [&] {
      switch (kind) {
        case QuantityKind::noether: return noether_quantity(L, group, p.path, alpha, opt);
        case QuantityKind::autonomous: return autonomous_quantity(L, p.path, alpha, opt);
        case QuantityKind::oscillator: return oscillator_quantity(p.path, *cfg.omega, alpha, cfg.conventions);
        case QuantityKind::q_alpha: break;
      }
      return second_el_quantity(L, p.path, alpha);
    }();
    CsvTable t;
    t.comments = comments;
    t.comments.push_back("alpha=" + format_alpha(alpha));
    for (const auto& n : q.notes) t.comments.push_back(n);
    t.header = {"t", "I"};
    for (std::size_t k = 0; k < q.size(); ++k) t.rows.push_back({format_real(grid[k]), format_real(q.values[k])});
    DriftReport d = drift(q);
    return Result{{"quantity_alpha" + format_alpha(alpha) + ".csv", t.str()}, std::move(d)};
  });

  CsvTable summary;
  summary.comments = comments;
  summary.header = {"alpha", "min", "max", "mean", "relative_drift", "convention"};
  std::vector<Written> files;
  int code = exit_ok;
  const std::string convention = cfg.conventions.label() + (cfg.substitute_el ? ";conslaw2" : ";conslaw");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const DriftReport& d = results[i].drift;
    summary.rows.push_back({format_alpha(cfg.alphas[i]), format_real(d.min), format_real(d.max), format_real(d.mean),
                            format_real(d.relative_drift), convention});
    files.push_back(std::move(results[i].file));
    if (cfg.expect_conserved && !(d.relative_drift <= cfg.drift_tolerance)) {
      log << "alpha=" << format_alpha(cfg.alphas[i]) << ": relative drift " << format_real(d.relative_drift)
          << " exceeds tolerance " << format_short(cfg.drift_tolerance) << "\n";
      code = exit_check;
    }
  }
  files.push_back({"drift_summary.csv", summary.str()});
  write_all(out, files, log);
  return code;
}

int cmd_check(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
  const Grid grid = config_grid(cfg);
  const GroupSpec group = parse_group(cfg.group, cfg.custom_time_map, cfg.a);
  const double tol = cfg.check_tolerance;
  const auto& s = default_s_samples();
  const auto t = default_t_samples(cfg.a, cfg.b);

  std::vector<CheckReport> reports{check_group_law(group, s, t, tol), check_admissible(group, s, t, tol),
                                   check_localization(group, cfg.a, s, t, tol)};
  {
    const PreparedPath p = prepare_path(cfg, grid, FractionalOrder(cfg.alphas.front()));
    std::vector<Eigen::VectorXd> xs;
    for (std::size_t k = 0; k < p.path.size(); k += std::max<std::size_t>(1, p.path.size() / 8))
      xs.push_back(p.path.state(k));
    reports.push_back(check_generator(group, t, xs, 1e-5));
  }

  auto per_alpha = sweep<std::vector<CheckReport>>(cfg.alphas.size(), [&](std::size_t i) {
    const FractionalOrder alpha(cfg.alphas[i]);
    const PreparedPath p = prepare_path(cfg, grid, alpha);
    const std::string tag = "(alpha=" + format_alpha(alpha) + ")";
    CheckReport chain{"chain_rule" + tag, true, 0.0, 0, ""};
    for (const double si : s) {
      CheckReport r;
      try {
        r = check_chain_rule(group, p.path, alpha, si, tol);
      } catch (const DomainError& e) {
        r = CheckReport{"chain_rule", false, std::numeric_limits<double>::infinity(), 0, e.what()};
      }
      chain.passed = chain.passed && r.passed;
      chain.samples += r.samples;
      if (!(r.max_violation <= chain.max_violation)) chain.max_violation = r.max_violation, chain.context = r.context;
    }
    CheckReport inv = check_invariance(problem_lagrangian(cfg, alpha), group, p.path, alpha, s, tol);
    inv.check += tag;
    return std::vector<CheckReport>{chain, inv};
  });
  for (auto& v : per_alpha) reports.insert(reports.end(), v.begin(), v.end());

  CsvTable table;
  table.comments = run_comments(cfg, "check");
  table.comments.push_back("group=" + group.name + " s_samples=-0.5,-0.1,0.1,0.5 t_samples=33 generator_tolerance=1e-05");
  table.header = {"check", "passed", "max_violation"};
  int code = exit_ok;
  for (const auto& r : reports) {
    table.rows.push_back({r.check, r.passed ? "true" : "false",
                          std::isfinite(r.max_violation) ? format_real(r.max_violation) : "inf"});
    if (!r.passed) {
      code = exit_check;
      log << r.check << " failed: " << r.context << "\n";
    }
  }
  write_all(out, {{"checks.csv", table.str()}}, log);
  return code;
}

int run_command(const std::string& command, const std::string& config_path, const std::string& out_override,
                std::ostream& log) {
  try {
    const RunConfig cfg = load_config(config_path);
    const std::filesystem::path out = out_override.empty() ? std::filesystem::path(cfg.outputs) : std::filesystem::path(out_override);
    if (command == "solve") return cmd_solve(cfg, out, log);
    if (command == "noether") return cmd_noether(cfg, out, log);
    if (command == "check") return cmd_check(cfg, out, log);
    log << "error: unknown command '" << command << "'\n";
    return exit_config;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const NumericalFailure& e) {
    log << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace fracnoether
