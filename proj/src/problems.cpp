#include "nagflow/problems.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nagflow {

SmoothProblem QuadraticProblem::smooth() const {
  SmoothProblem f;
  f.dim = dim();
  Mat A = matrix;
  f.value = [A](const Vec& x) { return 0.5 * x.dot(A * x); };
  f.gradient = [A](const Vec& x) { return Vec(A * x); };
  f.mu = mu;
  f.lip = lip;
  f.minimizer = Vec::Zero(dim());
  f.quadratic = matrix;
  return f;
}

QuadraticProblem make_quadratic(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw std::invalid_argument("make_quadratic: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw std::invalid_argument("make_quadratic: matrix is not symmetric (|A - A'| = " +
                                std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
  Vec ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] < -1e-12 * scale) {
      throw std::invalid_argument("make_quadratic: matrix is indefinite (eigenvalue " +
                                  std::to_string(ev[i]) + ")");
    }
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  QuadraticProblem q;
  q.matrix = 0.5 * (A + A.transpose());
  q.eigenvalues = ev;
  q.mu = ev[0];
  q.lip = ev[ev.size() - 1];
  if (q.lip <= 0.0) {
    throw std::invalid_argument("make_quadratic: matrix is zero");
  }
  return q;
}

ProxTerm prox_zero() {
  ProxTerm g;
  g.value = [](const Vec&) { return 0.0; };
  g.prox = [](double, const Vec& x) { return x; };
  g.zero = true;
  return g;
}

ProxTerm prox_l1(double weight) {
  if (!(weight > 0.0)) {
    throw std::invalid_argument("prox_l1: weight must be positive");
  }
  ProxTerm g;
  g.value = [weight](const Vec& x) { return weight * x.lpNorm<1>(); };
  g.prox = [weight](double lambda, const Vec& x) {
    const double t = lambda * weight;
    Vec y(x.size());
    for (int i = 0; i < x.size(); ++i) {
      const double a = std::abs(x[i]) - t;
      y[i] = a > 0.0 ? (x[i] > 0.0 ? a : -a) : 0.0;
    }
    return y;
  };
  return g;
}

ProxTerm prox_box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) {
    throw std::invalid_argument("prox_box: bound dimensions differ");
  }
  if (((hi - lo).array() < 0.0).any()) {
    throw std::invalid_argument("prox_box: requires lo <= hi componentwise");
  }
  ProxTerm g;
  g.value = [lo, hi](const Vec& x) {
    if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any()) return kInf;
    return 0.0;
  };
  g.prox = [lo, hi](double, const Vec& x) {
    return Vec(x.cwiseMax(lo).cwiseMin(hi));
  };
  return g;
}

CompositeProblem as_composite(const SmoothProblem& f) {
  CompositeProblem p;
  p.smooth = f;
  p.nonsmooth = prox_zero();
  p.minimizer = f.minimizer;
  if (f.minimizer) p.optimal_value = f.value(*f.minimizer);
  return p;
}

Vec gradient_mapping(const CompositeProblem& problem, const Vec& x, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("gradient_mapping: lambda must be positive");
  }
  Vec g = problem.smooth.gradient(x);
  if (problem.nonsmooth.zero) return g;
  Vec p = problem.nonsmooth.prox(lambda, x - lambda * g);
  return (x - p) / lambda;
}

double key_inequality_residual(const CompositeProblem& problem, const Vec& x,
                               const Vec& y, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("key_inequality_residual: lambda must be positive");
  }
  const double gy = problem.nonsmooth.value(y);
  if (!std::isfinite(gy)) {
    throw std::invalid_argument("key_inequality_residual: g(y) is not finite");
  }
  const double mu = problem.smooth.mu;
  const double L = problem.smooth.lip;
  Vec G = gradient_mapping(problem, x, lambda);
  Vec xplus = x - lambda * G;
  double rhs = problem.value(xplus) + G.dot(y - x) + 0.5 * mu * (y - x).squaredNorm() +
               0.5 * lambda * (2.0 - lambda * L) * G.squaredNorm();
  return problem.smooth.value(y) + gy - rhs;
}

double mu_convexity_slack(const SmoothProblem& f, const Vec& x, const Vec& y) {
  return f.value(x) - f.value(y) - f.gradient(y).dot(x - y) -
         0.5 * f.mu * (x - y).squaredNorm();
}

double descent_slack(const SmoothProblem& f, const Vec& x, const Vec& y) {
  return 0.5 * f.lip * (x - y).squaredNorm() -
         (f.value(x) - f.value(y) - f.gradient(y).dot(x - y));
}

CompositeProblem shift_strong_convexity(const CompositeProblem& problem,
                                        double mu_shift, ProxTerm shifted_prox) {
  if (!(mu_shift > 0.0)) {
    throw std::invalid_argument("shift_strong_convexity: mu_shift must be positive");
  }
  CompositeProblem out = problem;
  SmoothProblem f = problem.smooth;
  auto base_value = f.value;
  auto base_grad = f.gradient;
  out.smooth.value = [base_value, mu_shift](const Vec& x) {
    return base_value(x) + 0.5 * mu_shift * x.squaredNorm();
  };
  out.smooth.gradient = [base_grad, mu_shift](const Vec& x) {
    return Vec(base_grad(x) + mu_shift * x);
  };
  out.smooth.mu = f.mu + mu_shift;
  out.smooth.lip = f.lip + mu_shift;
  out.smooth.quadratic.reset();
  out.nonsmooth = std::move(shifted_prox);
  return out;
}

}  // namespace nagflow
