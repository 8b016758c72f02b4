#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "nagflow/types.hpp"

namespace nagflow {

/// Smooth convex objective f with gradient and the constants mu <= L.
/// Immutable after construction; all members are pure callables.
struct SmoothProblem {
  int dim = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  double mu = 0.0;   // strong-convexity modulus, >= 0
  double lip = 1.0;  // gradient Lipschitz constant, > 0
  std::optional<Vec> minimizer;

  // Set when f(x) = 0.5 x'Ax; enables exact linear solves downstream.
  std::optional<Mat> quadratic;
};

/// f(x) = 0.5 x'Ax for symmetric positive semidefinite A.
struct QuadraticProblem {
  Mat matrix;
  Vec eigenvalues;  // ascending
  double mu = 0.0;
  double lip = 1.0;

  int dim() const { return static_cast<int>(matrix.rows()); }
  double value(const Vec& x) const { return 0.5 * x.dot(matrix * x); }
  Vec gradient(const Vec& x) const { return matrix * x; }
  double condition() const { return lip / mu; }

  SmoothProblem smooth() const;
};

/// Convex, possibly nonsmooth term g given through its value (+inf allowed)
/// and proximal map prox(lambda, x) = argmin_y g(y) + ||x-y||^2/(2 lambda).
struct ProxTerm {
  std::function<double(const Vec&)> value;
  std::function<Vec(double, const Vec&)> prox;
  bool zero = false;  // marks g == 0 so callers may skip the prox entirely
};

/// F = f + g.
struct CompositeProblem {
  SmoothProblem smooth;
  ProxTerm nonsmooth;
  std::optional<Vec> minimizer;          // minimizer of F
  std::optional<double> optimal_value;   // F at the minimizer

  int dim() const { return smooth.dim; }
  double value(const Vec& x) const {
    return smooth.value(x) + nonsmooth.value(x);
  }
};

/// Builds a QuadraticProblem from symmetric PSD A. Eigenvalues in
/// [-1e-12, 0) are clamped to zero; asymmetry or an eigenvalue below
/// -1e-12 is rejected.
QuadraticProblem make_quadratic(const Mat& A);

ProxTerm prox_zero();
ProxTerm prox_l1(double weight);
ProxTerm prox_box(const Vec& lo, const Vec& hi);

/// Wraps a smooth problem as a composite with g == 0.
CompositeProblem as_composite(const SmoothProblem& f);

/// Composite gradient mapping (1/lambda)[x - prox(lambda, x - lambda grad f(x))].
/// Exactly grad f(x) when the nonsmooth part is zero.
Vec gradient_mapping(const CompositeProblem& problem, const Vec& x, double lambda);

/// Slack of the gradient-mapping inequality: F(y) minus its certified lower
/// bound built from the mapping at x. Nonnegative (up to rounding) for any
/// x, y with g(y) finite and lambda > 0.
double key_inequality_residual(const CompositeProblem& problem, const Vec& x,
                               const Vec& y, double lambda);

/// f(x) - f(y) - <grad f(y), x-y> - (mu/2)||x-y||^2; >= 0 up to rounding.
double mu_convexity_slack(const SmoothProblem& f, const Vec& x, const Vec& y);

/// (L/2)||x-y||^2 - [f(x) - f(y) - <grad f(y), x-y>]; >= 0 up to rounding.
double descent_slack(const SmoothProblem& f, const Vec& x, const Vec& y);

/// Moves a declared strong-convexity modulus mu_shift of the nonsmooth part
/// into the smooth part: f~ = f + mu_shift/2 ||.||^2, g~ = g - mu_shift/2 ||.||^2.
/// The proximal map of the shifted g~ is not derivable from g's prox alone
/// here, so the caller must supply it (shifted_prox receives the same
/// (lambda, x) arguments). Minimizer and optimal value carry over unchanged.
CompositeProblem shift_strong_convexity(const CompositeProblem& problem,
                                        double mu_shift, ProxTerm shifted_prox);

}  // namespace nagflow
