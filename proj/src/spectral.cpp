#include "nagflow/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "nagflow/schedules.hpp"

namespace nagflow {

namespace {

// Diagonal coefficients of the block splitting per kind: G11 = c11 I,
// G22 = c22 I (G12 = I always; G21 carries A).
void split_coefficients(const Transform& t, double* c11, double* c22) {
  switch (t.kind) {
    case TransformKind::heavy_ball: *c11 = 0.0; *c22 = -2.0; return;
    case TransformKind::momentum:   *c11 = -1.0; *c22 = -1.0; return;
    case TransformKind::dynamic:    *c11 = -1.0; *c22 = 0.0; return;
  }
  throw std::logic_error("unknown transform kind");
}

Mat lower_left_block(const Transform& t) {
  const int d = static_cast<int>(t.base.rows());
  switch (t.kind) {
    case TransformKind::heavy_ball: return -t.base / t.mu;
    case TransformKind::momentum:   return Mat(Mat::Identity(d, d) - t.base / t.mu);
    case TransformKind::dynamic:    return -t.base / t.gamma;
  }
  throw std::logic_error("unknown transform kind");
}

// Eigenvalues of the 2x2 amplifier E(alpha, R) for the scalar reduction
// R = [[c11, 1], [g21, c22]] of one eigendirection.
std::pair<std::complex<double>, std::complex<double>> scalar_amplifier_eigs(
    double c11, double g21, double c22, double alpha) {
  const double t1 = 1.0 - alpha * c11;
  const double t2 = 1.0 - alpha * c22;
  // E = 1/(t1 t2) [[t2, alpha t2], [g21 alpha, t1 + g21 alpha^2]]
  const double det = 1.0 / (t1 * t2);
  const double tr = (t2 + t1 + g21 * alpha * alpha) / (t1 * t2);
  const std::complex<double> disc =
      std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

}  // namespace

Transform build_transform(TransformKind kind, const QuadraticProblem& problem,
                          double mu_override, double gamma) {
  const int d = problem.dim();
  Transform t;
  t.kind = kind;
  t.base = problem.matrix;
  t.mu = mu_override > 0.0 ? mu_override : problem.mu;
  t.gamma = gamma;
  const Mat I = Mat::Identity(d, d);
  const Mat Z = Mat::Zero(d, d);
  t.matrix.resize(2 * d, 2 * d);
  switch (kind) {
    case TransformKind::heavy_ball:
    case TransformKind::momentum:
      if (!(t.mu > 0.0)) {
        throw std::invalid_argument(
            "build_transform: this kind divides by mu = 0; use the dynamic kind");
      }
      break;
    case TransformKind::dynamic:
      if (!(gamma > 0.0)) {
        throw std::invalid_argument("build_transform: dynamic kind needs gamma > 0");
      }
      break;
  }
  double c11, c22;
  split_coefficients(t, &c11, &c22);
  t.matrix.topLeftCorner(d, d) = c11 == 0.0 ? Z : Mat(c11 * I);
  t.matrix.topRightCorner(d, d) = I;
  t.matrix.bottomLeftCorner(d, d) = lower_left_block(t);
  t.matrix.bottomRightCorner(d, d) = c22 == 0.0 ? Z : Mat(c22 * I);
  return t;
}

Mat gs_amplifier(const Transform& transform, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gs_amplifier: alpha must be positive");
  const int d = static_cast<int>(transform.base.rows());
  double c11, c22;
  split_coefficients(transform, &c11, &c22);
  const Mat G21 = lower_left_block(transform);
  const double t1 = 1.0 / (1.0 - alpha * c11);
  const double t2 = 1.0 / (1.0 - alpha * c22);
  // Forward substitution on (I - alpha M) E = I + alpha N with
  // M = [[c11 I, 0], [G21, c22 I]], N = [[0, I], [0, 0]].
  Mat E(2 * d, 2 * d);
  const Mat I = Mat::Identity(d, d);
  E.topLeftCorner(d, d) = t1 * I;
  E.topRightCorner(d, d) = alpha * t1 * I;
  E.bottomLeftCorner(d, d) = (alpha * t1 * t2) * G21;
  E.bottomRightCorner(d, d) = t2 * (I + (alpha * alpha * t1) * G21);
  return E;
}

std::vector<std::complex<double>> dense_spectrum(const Mat& M) {
  Eigen::EigenSolver<Mat> es(M, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> eigs(M.rows());
  for (int i = 0; i < M.rows(); ++i) eigs[i] = es.eigenvalues()[i];
  return eigs;
}

std::vector<std::complex<double>> amplifier_spectrum(const Transform& transform,
                                                     double alpha) {
  const int d = static_cast<int>(transform.base.rows());
  if (2 * d <= 256) return dense_spectrum(gs_amplifier(transform, alpha));
  // Per eigendirection of A the block amplifier reduces to a 2x2 scalar
  // case; the union of those spectra is the spectrum of E.
  Eigen::SelfAdjointEigenSolver<Mat> es(transform.base);
  double c11, c22;
  split_coefficients(transform, &c11, &c22);
  std::vector<std::complex<double>> eigs;
  eigs.reserve(2 * d);
  for (int i = 0; i < d; ++i) {
    const double lam = es.eigenvalues()[i];
    double g21;
    switch (transform.kind) {
      case TransformKind::heavy_ball: g21 = -lam / transform.mu; break;
      case TransformKind::momentum:   g21 = 1.0 - lam / transform.mu; break;
      default:                        g21 = -lam / transform.gamma; break;
    }
    auto [e1, e2] = scalar_amplifier_eigs(c11, g21, c22, alpha);
    eigs.push_back(e1);
    eigs.push_back(e2);
  }
  return eigs;
}

double spectral_radius(const std::vector<std::complex<double>>& eigs) {
  double r = 0.0;
  for (const auto& e : eigs) r = std::max(r, std::abs(e));
  return r;
}

double modulus_condition(const std::vector<std::complex<double>>& eigs) {
  double lo = kInf, hi = 0.0;
  for (const auto& e : eigs) {
    lo = std::min(lo, std::abs(e));
    hi = std::max(hi, std::abs(e));
  }
  return hi / lo;
}

namespace {

double spectral_norm(const Mat& M) {
  return M.jacobiSvd().singularValues()[0];
}

}  // namespace

SpectralReport transform_condition_report(const Transform& transform) {
  if (transform.kind == TransformKind::dynamic) {
    throw std::invalid_argument("transform_condition_report: dynamic kind has no sqrt(kappa) identity");
  }
  SpectralReport r;
  r.description = "transform condition";
  r.eigenvalues = dense_spectrum(transform.matrix);
  r.rho = spectral_radius(r.eigenvalues);
  r.condition = modulus_condition(r.eigenvalues);
  const QuadraticProblem base = make_quadratic(transform.base);
  const double kappa = base.lip / base.mu;
  r.bound = std::sqrt(kappa);
  bool real_parts_negative = true;
  for (const auto& e : r.eigenvalues) {
    if (e.real() >= 0.0) real_parts_negative = false;
  }
  r.pass = real_parts_negative && std::abs(r.condition - r.bound) <= 1e-8 * r.bound;
  return r;
}

SpectralReport splitting_radius_report(const Transform& transform, double alpha) {
  SpectralReport r;
  r.description = "splitting radius";
  if (transform.kind == TransformKind::dynamic) {
    throw std::invalid_argument("splitting_radius_report: use the scaled sweep for the dynamic kind");
  }
  const QuadraticProblem base = make_quadratic(transform.base);
  const double kappa = base.lip / base.mu;
  r.condition = kappa;
  const double alpha_max = 2.0 / std::sqrt(kappa);
  r.admissible = alpha > 0.0 && alpha <= alpha_max * (1.0 + 1e-12);
  r.eigenvalues = amplifier_spectrum(transform, alpha);
  r.rho = spectral_radius(r.eigenvalues);
  r.norm2 = spectral_norm(gs_amplifier(transform, alpha));
  r.bound = 1.0 / std::sqrt(1.0 + 2.0 * alpha);
  if (!r.admissible) {
    r.pass = true;  // nothing asserted outside the proved interval
    return r;
  }
  r.pass = r.rho <= r.bound + 1e-10;
  if (alpha >= alpha_max * (1.0 - 1e-12)) {
    const double end_bound = 1.0 / (1.0 + 1.0 / std::sqrt(kappa));
    r.bound = std::min(r.bound, end_bound);
    r.pass = r.pass && r.rho <= end_bound + 1e-10;
  }
  return r;
}

SpectralReport scalar_splitting_report(double a, double b, double c, double d,
                                       double alpha) {
  if (a < 0.0 || b < 0.0 || c < 0.0 || d < 0.0) {
    throw std::invalid_argument("scalar_splitting_report: entries must be >= 0");
  }
  const double tr = -(a + d);
  const double det = a * d + b * c;
  if (!(tr < 0.0 && det > 0.0)) {
    throw std::invalid_argument("scalar_splitting_report: needs tr R < 0 < det R");
  }
  SpectralReport r;
  r.description = "scalar splitting radius";
  const double lo = std::abs(tr) - 2.0 * std::sqrt(det);
  const double hi = std::abs(tr) + 2.0 * std::sqrt(det);
  const double bc_alpha = b * c * alpha;
  r.admissible = bc_alpha >= lo && bc_alpha <= hi;
  Mat R(2, 2);
  R << -a, c, -b, -d;
  Mat M(2, 2), N(2, 2);
  M << -a, 0.0, -b, -d;
  N = R - M;
  const Mat E = (Mat::Identity(2, 2) - alpha * M).lu().solve(
      Mat::Identity(2, 2) + alpha * N);
  r.eigenvalues = dense_spectrum(E);
  r.rho = spectral_radius(r.eigenvalues);
  r.norm2 = spectral_norm(E);
  r.bound = 1.0 / std::sqrt(1.0 + std::abs(tr) * alpha + a * d * alpha * alpha);
  r.pass = !r.admissible || std::abs(r.rho - r.bound) <= 1e-10;
  return r;
}

ScaledSweep scaled_splitting_sweep(const QuadraticProblem& problem, double gamma0,
                                   int K) {
  if (problem.mu != 0.0) {
    throw std::invalid_argument("scaled_splitting_sweep: requires mu = 0");
  }
  if (!(gamma0 > 0.0) || K < 1) {
    throw std::invalid_argument("scaled_splitting_sweep: gamma0 > 0 and K >= 1");
  }
  const int d = problem.dim();
  const double L = problem.lip;
  ScaledSweep sweep;
  sweep.gammas.push_back(gamma0);
  double gamma = gamma0;
  double product = 1.0;
  bool all_eq = true, all_ok = true;
  for (int k = 0; k < K; ++k) {
    const double alpha = solve_alpha(StepRule::MU0, gamma, 0.0, L);
    const double gamma_next = gamma / (1.0 + alpha);
    const Transform t = build_transform(TransformKind::dynamic, problem, -1.0, gamma_next);
    const Mat E = gs_amplifier(t, alpha);
    Mat Et(2 * d, 2 * d);
    // Diagonal rescaling diag(I, gamma_{k+1} I) E diag(I, gamma_k I)^{-1}.
    Et.topLeftCorner(d, d) = E.topLeftCorner(d, d);
    Et.topRightCorner(d, d) = E.topRightCorner(d, d) / gamma;
    Et.bottomLeftCorner(d, d) = gamma_next * E.bottomLeftCorner(d, d);
    Et.bottomRightCorner(d, d) = (gamma_next / gamma) * E.bottomRightCorner(d, d);

    SpectralReport r;
    r.description = "scaled splitting step " + std::to_string(k);
    r.eigenvalues = dense_spectrum(Et);
    r.rho = spectral_radius(r.eigenvalues);
    r.norm2 = spectral_norm(Et);
    r.bound = gamma_next / gamma;
    r.pass = std::abs(r.rho - r.bound) <= 1e-10;
    all_eq = all_eq && r.pass;
    product *= r.rho;
    gamma = gamma_next;
    sweep.gammas.push_back(gamma);
    sweep.reports.push_back(std::move(r));
  }
  sweep.product = product;
  const double sg = std::sqrt(gamma0), sL = std::sqrt(L);
  sweep.product_bound = 4.0 * (sL + sg) * (sL + sg) /
                        ((sg * K + 2.0 * sL + 2.0 * sg) * (sg * K + 2.0 * sL + 2.0 * sg));
  const double gamma_ratio = gamma / gamma0;
  sweep.product_matches_gamma =
      std::abs(product - gamma_ratio) <= 1e-10 * std::max(1.0, gamma_ratio);
  sweep.product_within_bound = gamma_ratio <= sweep.product_bound * (1.0 + 1e-12);
  all_ok = all_eq && sweep.product_matches_gamma && sweep.product_within_bound;
  sweep.pass = all_ok;
  return sweep;
}

GdRates gd_rates(const QuadraticProblem& problem) {
  if (!(problem.mu > 0.0)) {
    throw std::invalid_argument("gd_rates: requires mu > 0 (rate degenerates to 1)");
  }
  const double mu = problem.mu, L = problem.lip;
  const double kappa = L / mu;
  GdRates r;
  r.alpha_opt = 2.0 / (mu + L);
  r.rate_opt = (kappa - 1.0) / (kappa + 1.0);
  r.alpha_simple = 1.0 / L;
  r.rate_simple = 1.0 - 1.0 / kappa;
  auto rho_iteration = [&problem](double alpha) {
    double r = 0.0;
    for (int i = 0; i < problem.eigenvalues.size(); ++i) {
      r = std::max(r, std::abs(1.0 - alpha * problem.eigenvalues[i]));
    }
    return r;
  };
  r.verified = std::abs(rho_iteration(r.alpha_opt) - r.rate_opt) <= 1e-12 &&
               std::abs(rho_iteration(r.alpha_simple) - r.rate_simple) <= 1e-12;
  return r;
}

}  // namespace nagflow
