#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nagflow/problems.hpp"

namespace nagflow {
namespace catalog {

/// A = I.
QuadraticProblem quadratic_identity(int dim);

/// Diagonal A with eigenvalues log-spaced on [1, kappa]. With zero_smallest
/// the bottom eigenvalue is replaced by 0 (mu = 0, L = kappa).
QuadraticProblem quadratic_diag(int dim, double kappa, bool zero_smallest = false);

/// Random SPD matrix with eigenvalues log-spaced on [1, kappa] in a random
/// orthogonal frame drawn from the given engine.
QuadraticProblem quadratic_random(int dim, double kappa, std::mt19937_64& rng);

/// Dense symmetric matrix from a whitespace-separated text file, one row per
/// line.
QuadraticProblem quadratic_from_file(const std::string& path);
QuadraticProblem quadratic_from_text(const std::string& text);

/// 1-d softplus pair with a quadratic term: mu = 0.1, L = 1.35, frozen
/// minimizer.
SmoothProblem logistic_1d();

/// 2-d softplus sum with a quadratic term: mu = 0.1, analytic L, frozen
/// minimizer.
SmoothProblem logistic_2d();

/// Strongly convex separable lasso: f = 0.5 (x-c)' D (x-c), g = w ||x||_1
/// with diagonal D; the minimizer is componentwise soft-thresholding, exact.
CompositeProblem lasso_diag5();

/// mu = 0 lasso: f = 0.5 ||Bx - c||^2 with a 3x5 B (rank 3), g = w ||x||_1.
/// The minimizer is recovered exactly from its frozen support.
CompositeProblem lasso_flat5();

/// Random SPD quadratic plus l1 with the given weight; reference solved via
/// a long accelerated run is NOT attached (used for inequality sweeps that
/// need no reference).
CompositeProblem lasso_random(int dim, double kappa, double weight,
                              std::mt19937_64& rng);

struct Entry {
  std::string name;
  CompositeProblem problem;
};

/// Problems with references attached, used by the theorem-check sweeps:
/// strongly convex quadratics, a mu = 0 quadratic, the two lasso fixtures
/// and the two logistic objectives.
std::vector<Entry> reference_catalog();

/// Smooth subset of reference_catalog() (zero nonsmooth part).
std::vector<Entry> smooth_reference_catalog();

}  // namespace catalog
}  // namespace nagflow
