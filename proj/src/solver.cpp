#include "fracnoether/solver.hpp"

#include <cmath>
#include <sstream>

#include "fracnoether/errors.hpp"
#include "fracnoether/operators.hpp"

namespace fracnoether {

namespace {

constexpr double kMaxCondition = 1e12;

void validate(const LinearProblem& p) {
  if (p.dim == 0) throw DomainError("linear problem: dimension must be positive");
  if (!std::isfinite(p.kappa)) throw DomainError("linear problem: kappa must be finite");
  const auto n = static_cast<Eigen::Index>(p.dim);
  auto check = [n](const Eigen::VectorXd& v, const char* what) {
    if (v.size() != n) throw DomainError(std::string("linear problem: ") + what + " has the wrong length");
    if (!v.allFinite()) throw DomainError(std::string("linear problem: ") + what + " is not finite");
  };
  if (const auto* d = std::get_if<Dirichlet>(&p.bc)) {
    check(d->xa, "xa");
    check(d->xb, "xb");
  } else {
    const auto& iv = std::get<InitialValue>(p.bc);
    check(iv.u0, "u0");
    check(iv.du0, "du0");
  }
}

}  // namespace

LinearSystem assemble(const LinearProblem& p) {
  validate(p);
  const Grid& g = p.grid;
  const auto N = static_cast<Eigen::Index>(g.n_sub());
  const double al = p.alpha.value();
  const Eigen::MatrixXd K =
      left_integral_matrix(g, p.alpha).entries() * right_integral_matrix(g, p.alpha).entries();

  LinearSystem sys{Eigen::MatrixXd::Zero(N + 1, N + 1),
                   Eigen::MatrixXd::Zero(N + 1, static_cast<Eigen::Index>(p.dim))};
  Eigen::MatrixXd& A = sys.A;
  A(0, 0) = 1.0;
  for (Eigen::Index k = 1; k < N; ++k) {
    const double r = std::pow((g[static_cast<std::size_t>(k)] - g.a()) / g.length(), al);
    A.row(k) = -p.kappa * K.row(k) + p.kappa * r * K.row(N);
    A(k, k) += 1.0;
    A(k, 0) -= 1.0 - r;
    A(k, N) -= r;
  }
  if (const auto* d = std::get_if<Dirichlet>(&p.bc)) {
    A(N, N) = 1.0;
    sys.rhs.row(0) = d->xa.transpose();
    sys.rhs.row(N) = d->xb.transpose();
  } else {
    const auto& iv = std::get<InitialValue>(p.bc);
    A(N, 0) = -1.0 / g.h();
    A(N, 1) = 1.0 / g.h();
    sys.rhs.row(0) = iv.u0.transpose();
    sys.rhs.row(N) = iv.du0.transpose();
  }
  return sys;
}

SolveReport solve(const LinearProblem& p) {
  const LinearSystem sys = assemble(p);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "solve: system is singular or ill-conditioned (condition estimate " << cond << ")";
    throw NumericalFailure(msg.str());
  }
  Eigen::MatrixXd X = lu.solve(sys.rhs);
  if (!X.allFinite()) throw NumericalFailure("solve: non-finite solution");
  const double residual = (sys.A * X - sys.rhs).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, sys.rhs.cwiseAbs().maxCoeff()) * std::max(1.0, X.cwiseAbs().maxCoeff());
  if (residual > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "solve: residual " << residual << " exceeds tolerance";
    throw NumericalFailure(msg.str());
  }
  // Pinned rows are reproduced bitwise.
  X.row(0) = sys.rhs.row(0);
  if (std::holds_alternative<Dirichlet>(p.bc)) X.row(X.rows() - 1) = sys.rhs.row(X.rows() - 1);
  return SolveReport{Trajectory(p.grid, std::move(X)), residual, cond};
}

ClassicalReference::ClassicalReference(double a, double b, Eigen::VectorXd xa, Eigen::VectorXd xb) : a_(a) {
  if (!(a < b)) throw DomainError("classical_reference: need a < b");
  if (xa.size() != xb.size()) throw DomainError("classical_reference: boundary vectors differ in length");
  const double ep = std::exp(b - a), em = std::exp(a - b);
  // c1 + c2 = xa, c1 ep + c2 em = xb
  c1_ = (xb - em * xa) / (ep - em);
  c2_ = xa - c1_;
}

Eigen::VectorXd ClassicalReference::operator()(double t) const {
  return c1_ * std::exp(t - a_) + c2_ * std::exp(a_ - t);
}

Eigen::VectorXd ClassicalReference::second_derivative(double t) const { return (*this)(t); }

Trajectory ClassicalReference::sample(const Grid& grid) const {
  return Trajectory::sample(grid, static_cast<std::size_t>(c1_.size()),
                            [this](double t) { return (*this)(t); });
}

ClassicalReference classical_reference(double a, double b, const Eigen::VectorXd& xa,
                                       const Eigen::VectorXd& xb) {
  return ClassicalReference(a, b, xa, xb);
}

}  // namespace fracnoether
