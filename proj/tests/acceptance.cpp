#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracnoether/config.hpp"
#include "fracnoether/lagrangian.hpp"
#include "fracnoether/noether.hpp"
#include "fracnoether/operators.hpp"
#include "fracnoether/presets.hpp"
#include "fracnoether/solver.hpp"
#include "fracnoether/symmetry.hpp"

namespace fs = std::filesystem;
using namespace fracnoether;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Trajectory square(const Grid& g) {
  return Trajectory::sample_scalar(g, [](double t) { return t * t; });
}

Trajectory harmonic_solve(std::size_t n, double al) {
  const RunConfig cfg = resolve(load_config((fs::path(FRACNOETHER_PRESETS) / "harmonic2d.cfg").string()));
  const Grid g = make_grid(cfg.a, cfg.b, n);
  return solve(*linear_problem(cfg, g, FractionalOrder(al))).solution;
}

Outcome operator_exactness() {
  const Grid g = make_grid(0, 1, 64);
  double worst = 0;
  for (const double al : {0.25, 0.5, 0.75, 1.0}) {
    const FractionalOrder a(al);
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(65, 3.0);
    const Eigen::VectorXd left = left_integral_matrix(g, a).apply(c);
    const Eigen::VectorXd right = right_integral_matrix(g, a).apply(c);
    for (std::size_t k = 1; k < 64; ++k) {
      const double t = g[k];
      const double l = 3.0 * std::pow(t, al) / std::tgamma(al + 1);
      const double r = 3.0 * std::pow(1 - t, al) / std::tgamma(al + 1);
      worst = std::max({worst, std::abs(left[static_cast<Eigen::Index>(k)] - l) / l,
                        std::abs(right[static_cast<Eigen::Index>(k)] - r) / r});
    }
  }
  return {worst <= 1e-12, "max relative error " + num(worst)};
}

Outcome composition() {
  bool ok = true;
  std::string detail;
  for (const double al : {0.3, 0.5, 0.8}) {
    double prev = INFINITY;
    detail += "alpha=" + num(al) + ":";
    for (const std::size_t n : {32, 64, 128, 256}) {
      const Grid g = make_grid(0, 1, n);
      const double r = check_composition(g, FractionalOrder(al), square(g)).caputo_residual;
      ok = ok && r < prev;
      prev = r;
      detail += " " + num(r);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Outcome classical_limit() {
  const ClassicalReference ref = classical_reference(0, 1, Eigen::Vector2d(1, 2), Eigen::Vector2d(2, 1));
  auto error = [&](std::size_t n) {
    const Trajectory x = harmonic_solve(n, 1.0);
    return (x.values() - ref.sample(x.grid()).values()).cwiseAbs().maxCoeff();
  };
  const double e100 = error(100), e200 = error(200), e400 = error(400);
  return {e200 <= 1e-3 && e200 < e100 && e400 < e200,
          "sup error N=100 " + num(e100) + ", N=200 " + num(e200) + ", N=400 " + num(e400)};
}

double q_drift(double al, std::size_t n) {
  return drift(second_el_quantity(harmonic_lagrangian(2), harmonic_solve(n, al), FractionalOrder(al))).relative_drift;
}

Outcome classical_q() {
  const double d = q_drift(1.0, 200);
  return {d <= 5e-2, "relative drift " + num(d)};
}

Outcome fractional_q() {
  const double one = q_drift(1.0, 200), half = q_drift(0.5, 200);
  return {half >= 10 * one, "alpha=0.5 " + num(half) + " vs alpha=1 " + num(one)};
}

Outcome oscillator() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const double omega : {0.5, 1.0})
    for (const double al : {0.7, 0.9}) {
      double prev = INFINITY;
      detail += "w=" + num(omega) + " a=" + num(al) + ":";
      for (const std::size_t n : {100, 200, 400}) {
        const LinearProblem p{make_grid(0, 1, n), FractionalOrder(al), 1, omega * omega,
                              InitialValue{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)}};
        const double d = drift(oscillator_quantity(solve(p).solution, omega, FractionalOrder(al))).relative_drift;
        ok = ok && d < prev;
        prev = d;
        detail += " " + num(d);
      }
      detail += "; ";
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok && secs <= 120, detail + "runtime " + num(secs) + " s"};
}

Outcome chain_rule() {
  bool ok = true;
  std::string detail;
  for (const std::size_t n : {64, 128, 256}) {
    const Grid g = make_grid(0, 1, n);
    const FractionalOrder al(0.5);
    const double comp = check_composition(g, al, square(g)).caputo_residual;
    const double gap = check_chain_rule(scaling(-1.0), square(g), al, 0.3, INFINITY).max_violation;
    ok = ok && gap <= 10 * comp;
    detail += "N=" + std::to_string(n) + " gap " + num(gap) + " vs 10x " + num(10 * comp) + "; ";
  }
  return {ok, detail};
}

Outcome invariance() {
  const Grid g = make_grid(0, 1, 200);
  const Trajectory x = example2_probe_path(g);
  bool ok = true;
  double gap = 0, inf = 0;
  for (const double al : {0.5, 0.75, 1.0}) {
    const FractionalOrder a(al);
    const LagrangianSpec L = homogeneous_lagrangian(a);
    const CheckReport r = check_invariance(L, scaling(-1.0), x, a, {-0.5, -0.1, 0.1, 0.5}, 1e-3);
    const double crit = infinitesimal_criterion_residual(L, scaling(-1.0), x, a).sup_norm();
    ok = ok && r.passed && crit <= 1e-2;
    gap = std::max(gap, r.max_violation);
    inf = std::max(inf, crit);
  }
  return {ok, "max normalized gap " + num(gap) + ", infinitesimal residual " + num(inf)};
}

Outcome weak_theorem() {
  const LagrangianSpec L = harmonic_lagrangian(2);
  const ClassicalReference ref = classical_reference(0, 1, Eigen::Vector2d(1, 2), Eigen::Vector2d(2, 1));
  bool ok = true;
  double prev = INFINITY, one = 0;
  std::string detail = "alpha=1:";
  for (const std::size_t n : {100, 200, 400}) {
    one = weak_theorem_residual(L, time_translation(), ref.sample(make_grid(0, 1, n)), FractionalOrder(1.0)).sup_norm();
    ok = ok && one < prev;
    prev = one;
    detail += " " + num(one);
  }
  const double half = weak_theorem_residual(L, time_translation(), harmonic_solve(400, 0.5), FractionalOrder(0.5)).sup_norm();
  return {ok && half >= 10 * one, detail + "; alpha=0.5: " + num(half)};
}

struct Row {
  bool group_law, admissible, localization, generator, chain_rule, invariance;
  double worst;
};

Row classify(const GroupSpec& grp, double a) {
  const auto& s = default_s_samples();
  const auto ts = default_t_samples(0, 1);
  std::vector<Eigen::VectorXd> xs;
  for (const double t : ts) xs.push_back(Eigen::Vector2d(1 + t, 1 + t * t));
  const double tol = 1e-9;
  Row r{};
  const CheckReport law = check_group_law(grp, s, ts, tol);
  const CheckReport adm = check_admissible(grp, s, ts, tol);
  const CheckReport loc = check_localization(grp, a, s, ts, tol);
  const CheckReport gen = check_generator(grp, ts, xs, 1e-5);
  r.group_law = law.passed;
  r.admissible = adm.passed;
  r.localization = loc.passed;
  r.generator = gen.passed;
  r.worst = std::max({law.max_violation, adm.max_violation, loc.max_violation});
  const Grid g = make_grid(0, 1, 200);
  const Trajectory x = example2_probe_path(g);
  const FractionalOrder al(0.5);
  r.chain_rule = true;
  double chain = 0;
  for (const double si : s) {
    try {
      chain = std::max(chain, check_chain_rule(grp, x, al, si, tol).max_violation);
    } catch (const std::exception&) {
      chain = INFINITY;
    }
  }
  r.chain_rule = chain <= tol;
  const CheckReport inv = check_invariance(homogeneous_lagrangian(al), grp, x, al, s, tol);
  r.invariance = inv.passed;
  if (r.chain_rule && r.invariance) r.worst = std::max({r.worst, chain, inv.max_violation});
  return r;
}

std::string flags(const Row& r) {
  auto f = [](bool b) { return b ? "1" : "0"; };
  return std::string("law") + f(r.group_law) + " adm" + f(r.admissible) + " loc" + f(r.localization) + " gen" +
         f(r.generator) + " chain" + f(r.chain_rule) + " inv" + f(r.invariance);
}

Outcome classification() {
  bool ok = true;
  std::string detail;
  for (const double lambda : {-1.0, 0.5, 2.0}) {
    const Row r = classify(localized_dilation(lambda, 0.0), 0.0);
    ok = ok && r.group_law && r.admissible && r.localization && r.generator && r.chain_rule && r.invariance &&
         r.worst <= 1e-9;
    detail += "localized(" + num(lambda) + ") " + flags(r) + " worst " + num(r.worst) + "; ";
  }
  const Row tr = classify(time_translation(), 0.0);
  ok = ok && tr.group_law && tr.admissible && !tr.localization && tr.generator;
  detail += "translation " + flags(tr) + "; ";
  const Row q = classify(quadratic_time(), 0.0);
  ok = ok && !q.admissible;
  detail += "quadratic " + flags(q);
  return {ok, detail};
}

int run_cli(const std::string& cmd, const std::string& preset, const fs::path& out) {
  const std::string line = "\"" + std::string(FRACNOETHER_CLI) + "\" " + cmd + " --config \"" +
                           (fs::path(FRACNOETHER_PRESETS) / (preset + ".cfg")).string() + "\" --out \"" +
                           out.string() + "\" > /dev/null 2>&1";
  const int status = std::system(line.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli() {
  const fs::path root = fs::current_path() / "acceptance_out";
  fs::remove_all(root);
  const int r1 = run_cli("noether", "harmonic2d", root / "run1");
  const int r2 = run_cli("noether", "harmonic2d", root / "run2");
  bool same = r1 == 0 && r2 == 0;
  std::size_t files = 0;
  if (same)
    for (const auto& e : fs::directory_iterator(root / "run1")) {
      ++files;
      same = same && slurp(e.path()) == slurp(root / "run2" / e.path().filename());
    }
  same = same && files > 0;
  const int c1 = run_cli("noether", "oscillator_no_omega", root / "config");
  const int c2 = run_cli("solve", "singular", root / "singular");
  const int c3 = run_cli("noether", "harmonic2d_expect", root / "expect");
  return {same && c1 == 1 && c2 == 2 && c3 == 3,
          std::string(same ? "identical" : "differing") + " outputs (" + std::to_string(files) + " files); exit codes " +
              std::to_string(c1) + "/" + std::to_string(c2) + "/" + std::to_string(c3)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"operator exactness on constants", operator_exactness},
      {"composition residual decreases with N", composition},
      {"classical limit of the harmonic solve", classical_limit},
      {"Q_1 conserved along the alpha = 1 solution", classical_q},
      {"Q_alpha drifts at alpha = 0.5", fractional_q},
      {"oscillator quantity drift shrinks with N", oscillator},
      {"chain rule under dilation", chain_rule},
      {"example2 invariance under dilation", invariance},
      {"weak theorem residual", weak_theorem},
      {"group and localization classification", classification},
      {"CLI determinism and exit codes", cli}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << "\n";
  }
  return failed == 0 ? 0 : 1;
}
