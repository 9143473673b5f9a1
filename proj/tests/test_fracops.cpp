#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracnoether/errors.hpp"
#include "fracnoether/operators.hpp"

using namespace fracnoether;

namespace {

Eigen::VectorXd sample(const Grid& g, double (*f)(double)) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) v[static_cast<Eigen::Index>(k)] = f(g[k]);
  return v;
}

double square(double t) { return t * t; }
double ident(double t) { return t; }

std::vector<OperatorMatrix> all_operators(const Grid& g, FractionalOrder al) {
  return {left_integral_matrix(g, al), right_integral_matrix(g, al), left_caputo_matrix(g, al),
          right_caputo_matrix(g, al),  left_rl_matrix(g, al),        right_rl_matrix(g, al)};
}

}  // namespace

TEST(Grid, UniformNodes) {
  const Grid g = make_grid(0, 1, 4);
  ASSERT_EQ(g.size(), 5u);
  const double expect[] = {0, 0.25, 0.5, 0.75, 1};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(g[k], expect[k]);
  const Grid s = make_grid(-1, 1, 2);
  EXPECT_DOUBLE_EQ(s.h(), 1.0);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
  EXPECT_EQ(s[2], 1.0);
}

TEST(Grid, RejectsBadDomains) {
  EXPECT_THROW(make_grid(0, 1, 1), DomainError);
  EXPECT_THROW(make_grid(1, 1, 4), DomainError);
  EXPECT_THROW(make_grid(2, 1, 4), DomainError);
  EXPECT_THROW(FractionalOrder(0.0), DomainError);
  EXPECT_THROW(FractionalOrder(1.5), DomainError);
}

TEST(Integral, StructureAndSigns) {
  const Grid g = make_grid(0, 1, 16);
  const auto L = left_integral_matrix(g, FractionalOrder(0.4)).entries();
  const auto R = right_integral_matrix(g, FractionalOrder(0.4)).entries();
  EXPECT_EQ(L.row(0).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(R.row(16).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GE(L.minCoeff(), 0.0);
  EXPECT_GE(R.minCoeff(), 0.0);
  for (int k = 0; k < 17; ++k)
    for (int j = k + 1; j < 17; ++j) {
      EXPECT_EQ(L(k, j), 0.0);
      EXPECT_EQ(R(j, k), 0.0);
    }
  EXPECT_EQ((R - L.colwise().reverse().rowwise().reverse()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Integral, ConstantsExact) {
  for (const double al : {0.25, 0.5, 0.75, 1.0}) {
    const Grid g = make_grid(0, 1, 64);
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(65, 3.0);
    const Eigen::VectorXd l = left_integral_matrix(g, FractionalOrder(al)).apply(c);
    const Eigen::VectorXd r = right_integral_matrix(g, FractionalOrder(al)).apply(c);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double el = 3.0 * std::pow(g[k], al) / std::tgamma(1 + al);
      const double er = 3.0 * std::pow(1 - g[k], al) / std::tgamma(1 + al);
      EXPECT_NEAR(l[static_cast<Eigen::Index>(k)], el, 1e-13 * std::max(1.0, el));
      EXPECT_NEAR(r[static_cast<Eigen::Index>(k)], er, 1e-13 * std::max(1.0, er));
    }
  }
}

TEST(Integral, ClassicalTrapezoid) {
  const Grid g = make_grid(0, 1, 10);
  const Eigen::VectorXd out = left_integral_matrix(g, FractionalOrder(1.0)).apply(sample(g, ident));
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(out[static_cast<Eigen::Index>(k)], g[k] * g[k] / 2, 1e-15);
  const Eigen::VectorXd one = right_integral_matrix(g, FractionalOrder(1.0)).apply(Eigen::VectorXd::Ones(11));
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(one[static_cast<Eigen::Index>(k)], 1 - g[k], 1e-15);
}

TEST(Integral, HalfOrderOfIdentityConverges) {
  // 1/Gamma(2.5), from the Beta-function closed form.
  const double oracle = 0.752252778063675;
  double prev = 1.0;
  for (const std::size_t n : {16, 32, 64, 128, 256}) {
    const Grid g = make_grid(0, 1, n);
    const double err = std::abs(left_integral_matrix(g, FractionalOrder(0.5)).apply(sample(g, ident))[static_cast<Eigen::Index>(n)] - oracle);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(Caputo, AnnihilatesConstants) {
  const Grid g = make_grid(0, 2, 20);
  for (const double al : {0.3, 1.0}) {
    const Trajectory c = Trajectory::sample_scalar(g, [](double) { return 4.2; });
    EXPECT_LT(caputo_left(g, FractionalOrder(al), c).values().cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT(caputo_right(g, FractionalOrder(al), c).values().cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Caputo, ExactOnAffine) {
  const Grid g = make_grid(0, 1, 40);
  for (const double al : {0.2, 0.5, 0.9}) {
    const Eigen::VectorXd d = caputo_left(g, FractionalOrder(al), sample(g, ident));
    for (std::size_t k = 0; k < g.size(); ++k)
      EXPECT_NEAR(d[static_cast<Eigen::Index>(k)], std::pow(g[k], 1 - al) / std::tgamma(2 - al), 1e-12);
  }
  // 1/Gamma(1.5)
  EXPECT_NEAR(caputo_left(g, FractionalOrder(0.5), sample(g, ident))[40], 1.1283791670955126, 1e-12);
}

TEST(Caputo, ClassicalLimit) {
  const Grid g = make_grid(0, 1, 50);
  const Eigen::VectorXd d = caputo_left(g, FractionalOrder(1.0), sample(g, square));
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(d[static_cast<Eigen::Index>(k)], 2 * g[k], 1e-12);
  const Eigen::VectorXd r = caputo_right(g, FractionalOrder(1.0), sample(g, ident));
  EXPECT_NEAR(r.maxCoeff(), -1.0, 1e-12);
  EXPECT_NEAR(r.minCoeff(), -1.0, 1e-12);
}

TEST(Caputo, RightIsReflectedLeft) {
  const Grid g = make_grid(0, 1, 30);
  const Trajectory x = Trajectory::sample_scalar(g, [](double t) { return std::sin(3 * t) + t * t; });
  const FractionalOrder al(0.6);
  const Eigen::VectorXd right = caputo_right(g, al, x).component(0);
  const Eigen::VectorXd mirrored = caputo_left(g, al, x.reversed()).component(0).reverse();
  EXPECT_LT((right - mirrored).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(RiemannLiouville, BoundaryTerm) {
  const Grid g = make_grid(0, 1, 32);
  const FractionalOrder al(0.5);
  const Trajectory c = Trajectory::sample_scalar(g, [](double) { return 1.0; });
  const Trajectory d = rl_left(g, al, c);
  EXPECT_FALSE(d.defined(0));
  EXPECT_TRUE(std::isnan(d.values()(0, 0)));
  // 0.25^{-1/2} / Gamma(1/2)
  EXPECT_NEAR(d.values()(8, 0), 1.1283791670955126, 1e-13);
  const Trajectory r = rl_right(g, al, c);
  EXPECT_FALSE(r.defined(32));
  EXPECT_NEAR(r.values()(24, 0), 1.1283791670955126, 1e-13);
}

TEST(RiemannLiouville, MatchesCaputoWhenStartIsZero) {
  const Grid g = make_grid(0, 1, 32);
  const Trajectory x = Trajectory::sample_scalar(g, square);
  const Trajectory rl = rl_left(g, FractionalOrder(0.7), x);
  const Trajectory cap = caputo_left(g, FractionalOrder(0.7), x);
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_EQ(rl.values()(static_cast<Eigen::Index>(k), 0), cap.values()(static_cast<Eigen::Index>(k), 0));
  const Trajectory c = Trajectory::sample_scalar(g, [](double) { return 2.0; });
  EXPECT_EQ(rl_left(g, FractionalOrder(1.0), c).values(), caputo_left(g, FractionalOrder(1.0), c).values());
}

TEST(Operators, Linearity) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  const Grid g = make_grid(0, 1, 24);
  Eigen::VectorXd x(25), y(25);
  for (int i = 0; i < 25; ++i) x[i] = n(rng), y[i] = n(rng);
  const double c1 = 1.7, c2 = -0.3;
  for (const double al : {0.35, 1.0})
    for (const auto& op : all_operators(g, FractionalOrder(al))) {
      const Eigen::VectorXd lhs = op.apply(Eigen::VectorXd(c1 * x + c2 * y));
      const Eigen::VectorXd rhs = c1 * op.apply(x) + c2 * op.apply(y);
      for (int k = 0; k < 25; ++k) {
        if (std::isnan(lhs[k])) {
          EXPECT_TRUE(std::isnan(rhs[k]));
          continue;
        }
        EXPECT_NEAR(lhs[k], rhs[k], 1e-12 * (1 + std::abs(lhs[k]))) << to_string(op.kind());
      }
    }
}

TEST(Operators, Causality) {
  const Grid g = make_grid(0, 1, 20);
  const FractionalOrder al(0.45);
  const Eigen::VectorXd base = sample(g, square);
  for (const int node : {3, 10, 17}) {
    Eigen::VectorXd bumped = base;
    bumped[node] += 1.0;
    for (const auto& op : all_operators(g, al)) {
      const Eigen::VectorXd d = op.apply(bumped) - op.apply(base);
      const bool left = op.kind() == OperatorKind::left_integral || op.kind() == OperatorKind::left_caputo ||
                        op.kind() == OperatorKind::left_rl;
      for (int k = 0; k <= 20; ++k) {
        if (std::isnan(d[k])) continue;
        const bool blind = left ? k < node : k > node;
        if (blind) EXPECT_EQ(d[k], 0.0) << to_string(op.kind()) << " k=" << k;
      }
    }
  }
}

TEST(Operators, StrictCausalityOfIntegrals) {
  const Grid g = make_grid(0, 1, 20);
  const auto L = left_integral_matrix(g, FractionalOrder(0.45)).entries();
  const auto C = left_caputo_matrix(g, FractionalOrder(0.45)).entries();
  for (int k = 0; k <= 20; ++k)
    for (int j = k + 1; j <= 20; ++j) {
      EXPECT_EQ(L(k, j), 0.0);
      EXPECT_EQ(C(k, j), 0.0);
    }
}

TEST(Operators, ContinuityAtOne) {
  const Grid g = make_grid(0, 1, 40);
  const Eigen::VectorXd x = sample(g, [](double t) { return std::exp(t); });
  const Eigen::VectorXd I1 = left_integral_matrix(g, FractionalOrder(1.0)).apply(x);
  // The L1 rule tends to the backward difference as alpha -> 1.
  Eigen::VectorXd back = Eigen::VectorXd::Zero(41);
  for (int k = 1; k <= 40; ++k) back[k] = (x[k] - x[k - 1]) / g.h();
  double prev_i = 1e9, prev_d = 1e9;
  for (const double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const FractionalOrder al(1 - eps);
    const double ei = (left_integral_matrix(g, al).apply(x) - I1).cwiseAbs().maxCoeff();
    const double ed = (caputo_left(g, al, x) - back).cwiseAbs().maxCoeff();
    EXPECT_LT(ei, prev_i);
    EXPECT_LT(ed, prev_d);
    prev_i = ei;
    prev_d = ed;
  }
  EXPECT_LT(prev_i, 1e-4);
  EXPECT_LT(prev_d, 1e-3);
}

TEST(Composition, DecreasesWithRefinement) {
  for (const double al : {0.3, 0.5, 0.8}) {
    double prev = 1e9;
    for (const std::size_t n : {32, 64, 128, 256}) {
      const Grid g = make_grid(0, 1, n);
      const auto rep = check_composition(g, FractionalOrder(al), Trajectory::sample_scalar(g, square));
      EXPECT_LT(rep.caputo_residual, prev) << al << " " << n;
      prev = rep.caputo_residual;
    }
  }
}

TEST(Composition, ExactCases) {
  const Grid g = make_grid(0, 1, 32);
  const auto c = check_composition(g, FractionalOrder(0.4), Trajectory::sample_scalar(g, [](double) { return 3.0; }));
  EXPECT_LT(c.caputo_residual, 1e-14);
  const auto lin = check_composition(g, FractionalOrder(1.0), Trajectory::sample_scalar(g, ident));
  EXPECT_LT(lin.caputo_residual, 1e-14);
  EXPECT_LT(lin.rl_residual, 1e-14);
}

TEST(Composition, FrozenResidualsAtHalfOrder) {
  // Values recorded from an independent double-precision prototype of the same rules.
  const double frozen[] = {5.3e-3, 1.9e-3, 7.0e-4, 2.5e-4};
  int i = 0;
  for (const std::size_t n : {32, 64, 128, 256}) {
    const Grid g = make_grid(0, 1, n);
    const auto rep = check_composition(g, FractionalOrder(0.5), Trajectory::sample_scalar(g, square));
    EXPECT_NEAR(rep.caputo_residual, frozen[i], 0.06 * frozen[i]) << n;
    ++i;
  }
}
