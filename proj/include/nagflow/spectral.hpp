#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nagflow/problems.hpp"

namespace nagflow {

/// Block transformation G of the first-order momentum system for a
/// quadratic objective.
enum class TransformKind {
  heavy_ball,  // [[0, I], [-A/mu, -2I]]
  momentum,    // [[-I, I], [I - A/mu, -I]]
  dynamic,     // [[-I, I], [-A/gamma, 0]]
};

struct Transform {
  TransformKind kind = TransformKind::momentum;
  Mat matrix;   // assembled 2d x 2d block matrix
  Mat base;     // the quadratic's A
  double mu = 0.0;
  double gamma = 0.0;  // dynamic kind only
};

struct SpectralReport {
  std::string description;
  std::vector<std::complex<double>> eigenvalues;
  double rho = 0.0;        // max |eigenvalue|
  double bound = kNaN;     // proved bound when one applies
  double condition = kNaN; // kappa of the analysed matrix where meaningful
  double norm2 = kNaN;     // spectral norm, reported for observation only
  bool admissible = true;  // inputs inside the proved regime
  bool pass = true;        // rho within bound (when admissible)
};

/// Assembles the block transformation. heavy_ball/momentum require mu > 0
/// (pass mu_override to replace the quadratic's own mu); dynamic requires
/// gamma > 0.
Transform build_transform(TransformKind kind, const QuadraticProblem& problem,
                          double mu_override = -1.0, double gamma = -1.0);

/// One-step map (I - alpha M)^{-1}(I + alpha N) of the lower-triangular
/// block splitting G = M + N. Assembled by forward substitution; A is only
/// multiplied, never inverted.
Mat gs_amplifier(const Transform& transform, double alpha);

/// Complex spectrum of a dense real matrix (the eigenvalue oracle).
std::vector<std::complex<double>> dense_spectrum(const Mat& M);

/// Spectrum of gs_amplifier(transform, alpha) computed per eigendirection of
/// A through the 2x2 scalar reduction; used instead of the dense solver once
/// the block matrix exceeds 256 rows.
std::vector<std::complex<double>> amplifier_spectrum(const Transform& transform,
                                                     double alpha);

double spectral_radius(const std::vector<std::complex<double>>& eigs);

/// Condition number from eigenvalue moduli, max|lambda| / min|lambda|.
double modulus_condition(const std::vector<std::complex<double>>& eigs);

/// Report on the transformation itself: all eigenvalue real parts negative
/// and modulus condition number equal to sqrt(kappa(A)).
SpectralReport transform_condition_report(const Transform& transform);

/// Splitting stability check: for 0 < alpha <= 2/sqrt(kappa(A)) asserts
/// rho(E(alpha, G)) <= 1/sqrt(1+2 alpha), and at alpha = 2/sqrt(kappa)
/// additionally rho <= 1/(1 + 1/sqrt(kappa)). Outside that interval the
/// report is marked inadmissible and nothing is asserted.
SpectralReport splitting_radius_report(const Transform& transform, double alpha);

/// 2x2 scalar case R = [[-a, c], [-b, -d]], entries >= 0 with
/// tr R < 0 < det R. When |tr R| - 2 sqrt(det R) <= b c alpha <=
/// |tr R| + 2 sqrt(det R), the whole spectrum of E(alpha, R) lies on the
/// circle of radius 1/sqrt(1 + |tr R| alpha + a d alpha^2); the report
/// checks that radius against the eigenvalue oracle.
SpectralReport scalar_splitting_report(double a, double b, double c, double d,
                                       double alpha);

/// mu = 0 analysis of the rescaled splitting iteration: per step k the
/// diagonally rescaled amplifier has spectral radius exactly
/// gamma_{k+1}/gamma_k = 1/(1+alpha_k) under the step rule
/// L alpha_k^2 = gamma_{k+1}. Returns one report per step plus the product
/// checks.
struct ScaledSweep {
  std::vector<SpectralReport> reports;  // one per step
  std::vector<double> gammas;           // K+1 values
  double product = 1.0;                 // accumulated rho product
  double product_bound = kNaN;          // 4(sqrt L + sqrt g0)^2 / (...)^2
  bool product_matches_gamma = false;   // product == gamma_K/gamma_0
  bool product_within_bound = false;
  bool pass = false;
};
ScaledSweep scaled_splitting_sweep(const QuadraticProblem& problem, double gamma0,
                                   int K);

/// Explicit-Euler rates on a strongly convex quadratic: the optimal step
/// 2/(mu+L) with rate (kappa-1)/(kappa+1) and the simple step 1/L with rate
/// 1 - 1/kappa, both cross-checked against rho(I - alpha A).
struct GdRates {
  double alpha_opt = 0.0;
  double rate_opt = 0.0;
  double alpha_simple = 0.0;
  double rate_simple = 0.0;
  bool verified = false;  // formulas match the eigenvalue oracle within 1e-12
};
GdRates gd_rates(const QuadraticProblem& problem);

}  // namespace nagflow
