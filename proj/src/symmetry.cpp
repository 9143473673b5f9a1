#include "fracnoether/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracnoether/differences.hpp"
#include "fracnoether/errors.hpp"
#include "fracnoether/operators.hpp"

namespace fracnoether {

namespace {

constexpr double kStep = 1e-6;

Eigen::VectorXd identity_map(double, const Eigen::VectorXd& x) { return x; }
Eigen::VectorXd zero_field(const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()); }

CheckReport finish(std::string name, double violation, std::size_t samples, double tol, std::string context) {
  CheckReport r;
  r.check = std::move(name);
  r.max_violation = violation;
  r.samples = samples;
  r.passed = std::isfinite(violation) && violation <= tol;
  r.context = std::move(context);
  return r;
}

double slope(const GroupSpec& g, double s, const std::vector<double>& t) {
  return (g.phi0(s, t.back()) - g.phi0(s, t.front())) / (t.back() - t.front());
}

struct AffineFit {
  double m;
  double c;
  double deviation;
};

AffineFit fit_affine(const GroupSpec& g, double s, const std::vector<double>& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = t[static_cast<std::size_t>(i)];
    A(i, 1) = 1.0;
    y[i] = g.phi0(s, t[static_cast<std::size_t>(i)]);
  }
  const Eigen::Vector2d mc = A.colPivHouseholderQr().solve(y);
  return {mc[0], mc[1], (A * mc - y).cwiseAbs().maxCoeff()};
}

void require_samples(const std::vector<double>& s, const std::vector<double>& t, const char* who) {
  if (s.empty() || t.size() < 2) throw DomainError(std::string(who) + ": need s samples and at least two t samples");
}

// L1 rule on an arbitrary increasing node set, base point nodes[0].
Eigen::VectorXd caputo_on_nodes(std::span<const double> T, FractionalOrder alpha, const Eigen::VectorXd& y) {
  if (alpha.is_classical()) return finite_difference(T, y);
  const double al = alpha.value();
  const double g2 = std::tgamma(2.0 - al);
  const auto n = static_cast<Eigen::Index>(T.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double tk = T[static_cast<std::size_t>(k)];
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double t0 = T[static_cast<std::size_t>(i)], t1 = T[static_cast<std::size_t>(i + 1)];
      const double w = std::pow(tk - t0, 1.0 - al) - std::pow(tk - t1, 1.0 - al);
      acc += (y[i + 1] - y[i]) / (t1 - t0) * w;
    }
    out[k] = acc / g2;
  }
  return out;
}

Eigen::MatrixXd transformed_path(const GroupSpec& g, double s, const Trajectory& x) {
  Eigen::MatrixXd out(x.values().rows(), x.values().cols());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Eigen::VectorXd y = g.phi1(s, x.state(k));
    if (static_cast<std::size_t>(y.size()) != x.dim()) throw DomainError("group: space map changes dimension");
    out.row(static_cast<Eigen::Index>(k)) = y.transpose();
  }
  return out;
}

}  // namespace

double GroupSpec::zeta_rate(double t) const {
  if (zeta_dot) return zeta_dot(t);
  const double e = kStep * std::max(1.0, std::abs(t));
  return (zeta(t + e) - zeta(t - e)) / (2.0 * e);
}

GroupSpec time_translation() {
  GroupSpec g;
  g.name = "time_translation";
  g.phi0 = [](double s, double t) { return t + s; };
  g.phi1 = identity_map;
  g.zeta = [](double) { return 1.0; };
  g.zeta_dot = [](double) { return 0.0; };
  g.xi = zero_field;
  g.lambda = 0.0;
  g.beta = [](double s) { return s; };
  return g;
}

GroupSpec scaling(double rate) {
  GroupSpec g;
  std::ostringstream name;
  name << "scaling(" << rate << ")";
  g.name = name.str();
  g.phi0 = [rate](double s, double t) { return std::exp(rate * s) * t; };
  g.phi1 = identity_map;
  g.zeta = [rate](double t) { return rate * t; };
  g.zeta_dot = [rate](double) { return rate; };
  g.xi = zero_field;
  g.lambda = rate;
  g.beta = [](double) { return 0.0; };
  return g;
}

GroupSpec localized_dilation(double lambda, double a) {
  GroupSpec g;
  std::ostringstream name;
  name << "localized_dilation(" << lambda << ", " << a << ")";
  g.name = name.str();
  g.phi0 = [lambda, a](double s, double t) { return std::exp(lambda * s) * (t - a) + a; };
  g.phi1 = identity_map;
  g.zeta = [lambda, a](double t) { return lambda * (t - a); };
  g.zeta_dot = [lambda](double) { return lambda; };
  g.xi = zero_field;
  g.lambda = lambda;
  g.beta = [lambda, a](double s) { return -a * std::expm1(lambda * s); };
  return g;
}

GroupSpec affine(double lambda, double mu) {
  GroupSpec g;
  std::ostringstream name;
  name << "affine(" << lambda << ", " << mu << ")";
  g.name = name.str();
  auto beta = [lambda, mu](double s) { return lambda == 0.0 ? mu * s : mu * std::expm1(lambda * s) / lambda; };
  g.phi0 = [lambda, beta](double s, double t) { return std::exp(lambda * s) * t + beta(s); };
  g.phi1 = identity_map;
  g.zeta = [lambda, mu](double t) { return lambda * t + mu; };
  g.zeta_dot = [lambda](double) { return lambda; };
  g.xi = zero_field;
  g.lambda = lambda;
  g.beta = beta;
  return g;
}

GroupSpec rotation() {
  GroupSpec g;
  g.name = "space_only(rotation)";
  g.phi0 = [](double, double t) { return t; };
  g.phi1 = [](double s, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    if (x.size() != 2) throw DomainError("rotation: needs a two-dimensional state");
    const double c = std::cos(s), sn = std::sin(s);
    return Eigen::Vector2d(c * x[0] - sn * x[1], sn * x[0] + c * x[1]);
  };
  g.zeta = [](double) { return 0.0; };
  g.zeta_dot = [](double) { return 0.0; };
  g.xi = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    if (x.size() != 2) throw DomainError("rotation: needs a two-dimensional state");
    return Eigen::Vector2d(-x[1], x[0]);
  };
  g.lambda = 0.0;
  g.beta = [](double) { return 0.0; };
  return g;
}

GroupSpec quadratic_time() {
  GroupSpec g;
  g.name = "quadratic_time";
  g.phi0 = [](double s, double t) { return t + s * t * t; };
  g.phi1 = identity_map;
  g.zeta = [](double t) { return t * t; };
  g.zeta_dot = [](double t) { return 2.0 * t; };
  g.xi = zero_field;
  return g;
}

const std::vector<double>& default_s_samples() {
  static const std::vector<double> s{-0.5, -0.1, 0.1, 0.5};
  return s;
}

std::vector<double> default_t_samples(double a, double b) {
  std::vector<double> t(33);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = a + (b - a) * static_cast<double>(i) / 32.0;
  t.back() = b;
  return t;
}

CheckReport check_group_law(const GroupSpec& g, const std::vector<double>& s_samples,
                            const std::vector<double>& t_samples, double tol) {
  require_samples(s_samples, t_samples, "check_group_law");
  double worst = 0.0;
  std::size_t n = 0;
  std::string where;
  auto note = [&](double v, const std::string& what) {
    ++n;
    if (v > worst || !std::isfinite(v)) {
      worst = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
      where = what;
    }
  };
  for (const double t : t_samples) note(std::abs(g.phi0(0.0, t) - t), "identity at s = 0");
  for (const double s : s_samples)
    for (const double sp : s_samples) {
      for (const double t : t_samples) {
        const double lhs = g.phi0(s + sp, t);
        note(std::abs(lhs - g.phi0(s, g.phi0(sp, t))) / std::max(1.0, std::abs(lhs)), "composition");
      }
      note(std::abs(slope(g, s + sp, t_samples) - slope(g, s, t_samples) * slope(g, sp, t_samples)),
           "multiplicative slope law");
      if (g.lambda && g.beta) {
        const double lam = *g.lambda;
        note(std::abs(g.beta(s + sp) - (std::exp(lam * s) * g.beta(sp) + g.beta(s))), "beta cocycle");
      }
    }
  return finish("group_law", worst, n, tol, where.empty() ? "ok" : "worst: " + where);
}

CheckReport check_admissible(const GroupSpec& g, const std::vector<double>& s_samples,
                             const std::vector<double>& t_samples, double tol) {
  require_samples(s_samples, t_samples, "check_admissible");
  double worst = 0.0;
  std::string where;
  for (const double s : s_samples) {
    const AffineFit f = fit_affine(g, s, t_samples);
    double v = f.deviation;
    std::string what = "affine fit";
    if (g.lambda) {
      const double dm = std::abs(f.m - std::exp(*g.lambda * s));
      if (dm > v) v = dm, what = "slope vs e^{lambda s}";
    }
    if (g.beta) {
      const double dc = std::abs(f.c - g.beta(s));
      if (dc > v) v = dc, what = "intercept vs beta(s)";
    }
    if (v > worst) {
      worst = v;
      std::ostringstream os;
      os << what << " at s = " << s;
      where = os.str();
    }
  }
  return finish("admissible", worst, s_samples.size() * t_samples.size(), tol,
                where.empty() ? "ok" : "worst: " + where);
}

CheckReport check_localization(const GroupSpec& g, double a, const std::vector<double>& s_samples,
                               const std::vector<double>& t_samples, double tol) {
  require_samples(s_samples, t_samples, "check_localization");
  double moved = 0.0;
  for (const double s : s_samples) moved = std::max(moved, std::abs(g.phi0(s, a) - a));
  if (!(moved <= tol)) {
    std::ostringstream os;
    os << "phi0_s(a) != a: base point moves by up to " << moved;
    return finish("localization", moved, s_samples.size(), tol, os.str());
  }
  double worst = moved;
  std::optional<double> lam_ref = g.lambda;
  std::string where = "ok";
  for (const double s : s_samples) {
    if (s == 0.0) continue;
    const double m = slope(g, s, t_samples);
    double dev = 0.0;
    for (const double t : t_samples) dev = std::max(dev, std::abs(g.phi0(s, t) - (m * (t - a) + a)));
    if (dev > worst) worst = dev, where = "not of the form K(s)(t - a) + a";
    if (!(m > 0.0)) return finish("localization", std::numeric_limits<double>::infinity(), s_samples.size(), tol,
                                  "orientation reversed");
    const double lam = std::log(m) / s;
    if (!lam_ref) lam_ref = lam;
    const double dl = std::abs(lam - *lam_ref);
    if (dl > worst) worst = dl, where = "K(s) is not e^{lambda s} for a single lambda";
  }
  return finish("localization", worst, s_samples.size() * t_samples.size(), tol, where);
}

CheckReport check_chain_rule(const GroupSpec& g, const Trajectory& x, FractionalOrder alpha, double s,
                             double tol) {
  const Grid& grid = x.grid();
  std::vector<double> T(grid.size());
  for (std::size_t k = 0; k < T.size(); ++k) T[k] = g.phi0(s, grid[k]);
  for (std::size_t k = 1; k < T.size(); ++k)
    if (!(T[k] > T[k - 1])) throw DomainError("check_chain_rule: phi0_s is not increasing on the grid");

  const Eigen::MatrixXd y = transformed_path(g, s, x);
  const Eigen::Map<const Eigen::VectorXd> Tv(T.data(), static_cast<Eigen::Index>(T.size()));
  const Eigen::VectorXd dphi = finite_difference(grid, Eigen::VectorXd(Tv));
  double worst = 0.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const Eigen::VectorXd lhs = caputo_on_nodes(T, alpha, y.col(j));
    const Eigen::VectorXd base = caputo_left(grid, alpha, Eigen::VectorXd(y.col(j)));
    for (Eigen::Index k = 0; k < lhs.size(); ++k) {
      const double rhs = base[k] * std::pow(dphi[k], -alpha.value());
      worst = std::max(worst, std::abs(lhs[k] - rhs));
    }
  }
  std::ostringstream os;
  os << "s = " << s << ", base point " << T.front();
  return finish("chain_rule", worst, grid.size() * x.dim(), tol, os.str());
}

CheckReport check_invariance(const LagrangianSpec& L, const GroupSpec& g, const Trajectory& x,
                             FractionalOrder alpha, const std::vector<double>& s_samples, double tol,
                             InvarianceOptions options) {
  const Grid& grid = x.grid();
  const std::vector<double> t(grid.nodes().begin(), grid.nodes().end());
  const CheckReport adm = check_admissible(g, s_samples, t, 1e-9);
  if (!adm.passed)
    return finish("invariance", std::numeric_limits<double>::infinity(), 0, tol,
                  "group is not admissible (" + adm.context + ")");

  const Trajectory v = caputo_left(grid, alpha, x);
  const auto rows = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd f(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    f[k] = L.value(grid[ku], x.state(ku), v.state(ku));
  }
  const double lhs = trapezoid(grid, f);

  double worst = 0.0;
  std::string where = "ok";
  for (const double s : s_samples) {
    if (options.fixed_base_point) {
      const double moved = std::abs(g.phi0(s, grid.a()) - grid.a());
      if (moved > tol) {
        std::ostringstream os;
        os << "fixed base point needs phi0_s(a) = a; at s = " << s << " the base point moves to "
           << g.phi0(s, grid.a());
        return finish("invariance", std::numeric_limits<double>::infinity(), 0, tol, os.str());
      }
    }
    const double K = slope(g, s, t);
    const Trajectory y(grid, transformed_path(g, s, x));
    const Trajectory w = caputo_left(grid, alpha, y);
    const double scale = std::pow(K, -alpha.value());
    for (Eigen::Index k = 0; k < rows; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      f[k] = L.value(g.phi0(s, grid[ku]), y.state(ku), w.state(ku) * scale) * K;
    }
    const double rhs = trapezoid(grid, f);
    const double gap = std::abs(lhs - rhs) / (std::abs(lhs) + 1.0);
    if (!(gap <= worst)) {
      worst = std::isfinite(gap) ? gap : std::numeric_limits<double>::infinity();
      std::ostringstream os;
      os << "worst at s = " << s;
      where = os.str();
    }
  }
  return finish("invariance", worst, s_samples.size(), tol, where);
}

CheckReport check_generator(const GroupSpec& g, const std::vector<double>& t_samples,
                            const std::vector<Eigen::VectorXd>& x_samples, double tol) {
  double worst = 0.0;
  for (const double t : t_samples) {
    const double fd = (g.phi0(kStep, t) - g.phi0(-kStep, t)) / (2.0 * kStep);
    worst = std::max(worst, std::abs(g.zeta(t) - fd) / std::max(1.0, std::abs(fd)));
  }
  for (const auto& x : x_samples) {
    const Eigen::VectorXd fd = (g.phi1(kStep, x) - g.phi1(-kStep, x)) / (2.0 * kStep);
    const Eigen::VectorXd xi = g.xi(x);
    for (Eigen::Index i = 0; i < fd.size(); ++i)
      worst = std::max(worst, std::abs(xi[i] - fd[i]) / std::max(1.0, std::abs(fd[i])));
  }
  return finish("generator", worst, t_samples.size() + x_samples.size(), tol, "central differences in s");
}

}  // namespace fracnoether
