#include "nagflow/schedules.hpp"

#include <cmath>

namespace nagflow {

namespace {

// Positive root of L a^2 + (gamma - mu) a - gamma = 0 without cancellation
// when gamma >> mu.
double nag_alpha(double gamma, double mu, double lip) {
  const double b = gamma - mu;
  const double disc = std::sqrt(b * b + 4.0 * lip * gamma);
  double a = b >= 0.0 ? 2.0 * gamma / (b + disc) : (-b + disc) / (2.0 * lip);
  // mu = L puts the root exactly at 1; clamp stray rounding above it.
  return std::min(a, 1.0);
}

double mu0_alpha(double gamma, double lip) {
  // L a^2 (1+a) = gamma, one positive root. Newton from sqrt(gamma/L) with a
  // bisection safeguard on [0, sqrt(gamma/L)].
  double lo = 0.0, hi = std::sqrt(gamma / lip);
  double a = hi;
  for (int it = 0; it < 50; ++it) {
    const double r = lip * a * a * (1.0 + a) - gamma;
    if (std::abs(r) <= 1e-14 * std::max(gamma, lip)) break;
    if (r > 0.0) hi = a; else lo = a;
    const double dr = lip * a * (2.0 + 3.0 * a);
    double an = a - r / dr;
    if (!(an > lo && an < hi)) an = 0.5 * (lo + hi);
    a = an;
  }
  return a;
}

}  // namespace

double solve_alpha(StepRule rule, double gamma, double mu, double lip) {
  if (!(gamma > 0.0)) throw std::invalid_argument("solve_alpha: gamma must be positive");
  if (!(lip > 0.0) || mu < 0.0 || mu > lip) {
    throw std::invalid_argument("solve_alpha: need 0 <= mu <= lip, lip > 0");
  }
  switch (rule) {
    case StepRule::NAG:
      return nag_alpha(gamma, mu, lip);
    case StepRule::OAG1:
      return (gamma + std::sqrt(gamma * gamma + 4.0 * gamma * lip)) / (2.0 * lip);
    case StepRule::MU0:
      return mu0_alpha(gamma, lip);
  }
  throw std::logic_error("solve_alpha: unknown rule");
}

double gamma_next(GammaMode mode, double gamma, double alpha, double mu) {
  if (!(gamma > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("gamma_next: gamma and alpha must be positive");
  }
  if (mode == GammaMode::implicit) return (gamma + mu * alpha) / (1.0 + alpha);
  return (1.0 - alpha) * gamma + mu * alpha;
}

Schedule generate_schedule(StepRule rule, double gamma0, double mu, double lip, int K) {
  if (K < 1) throw std::invalid_argument("generate_schedule: K must be >= 1");
  if (!(gamma0 > 0.0)) throw std::invalid_argument("generate_schedule: gamma0 must be positive");
  Schedule s;
  s.rule = rule;
  s.mu = mu;
  s.lip = lip;
  s.gamma0 = gamma0;
  s.alphas.reserve(K);
  s.gammas.reserve(K + 1);
  s.lambdas.reserve(K + 1);
  s.log_lambdas.reserve(K + 1);
  s.gammas.push_back(gamma0);
  s.lambdas.push_back(1.0);
  s.log_lambdas.push_back(0.0);
  double gamma = gamma0;
  double lam = 1.0, loglam = 0.0;
  for (int k = 0; k < K; ++k) {
    const double a = solve_alpha(rule, gamma, rule == StepRule::MU0 ? 0.0 : mu, lip);
    double factor, logfactor;
    switch (rule) {
      case StepRule::NAG:
        gamma = gamma_next(GammaMode::explicit_euler, gamma, a, mu);
        factor = 1.0 - a;
        logfactor = std::log1p(-a);
        break;
      case StepRule::OAG1:
        gamma = gamma_next(GammaMode::implicit, gamma, a, mu);
        factor = 1.0 / (1.0 + a);
        logfactor = -std::log1p(a);
        break;
      case StepRule::MU0:
        gamma = gamma / (1.0 + a);
        factor = 1.0 / (1.0 + a);
        logfactor = -std::log1p(a);
        break;
      default:
        throw std::logic_error("generate_schedule: unknown rule");
    }
    loglam += logfactor;
    // Below ~1e-300 the direct product underflows; keep the log running and
    // reconstruct from it so the stored values stay meaningful.
    if (lam >= 1e-300) {
      lam *= factor;
    } else {
      lam = std::exp(loglam);
    }
    s.alphas.push_back(a);
    s.gammas.push_back(gamma);
    s.lambdas.push_back(lam);
    s.log_lambdas.push_back(loglam);
  }
  return s;
}

double RescaleFactor::value(double tau) const {
  const double sg = std::sqrt(gamma0);
  if (kind == RescaleKind::rational) return sg * b / (sg * tau + b);
  if (mu == 0.0) return 2.0 * sg / (sg * tau + 2.0);
  const double sm = std::sqrt(mu);
  const double e = std::exp(-sm * tau);
  return sm * (1.0 - alpha_mu * e) / (1.0 + alpha_mu * e);
}

double RescaleFactor::derivative(double tau) const {
  const double a = value(tau);
  if (kind == RescaleKind::rational) return -a * a / b;
  return 0.5 * (mu - a * a);
}

double RescaleFactor::damping(double tau) const {
  const double a = value(tau);
  return (mu + a * a - derivative(tau)) / a;
}

RescaleFactor make_rescale_factor(RescaleKind kind, double mu, double gamma0, double b) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("rescale factor: gamma0 must be positive");
  if (mu < 0.0) throw std::invalid_argument("rescale factor: mu must be >= 0");
  if (kind == RescaleKind::rational && !(b > 0.0 && b <= 2.0)) {
    throw std::invalid_argument("rescale factor: rational kind needs b in (0, 2]");
  }
  RescaleFactor r;
  r.kind = kind;
  r.mu = mu;
  r.gamma0 = gamma0;
  r.b = b;
  if (kind == RescaleKind::closed_form && mu > 0.0) {
    const double sm = std::sqrt(mu), sg = std::sqrt(gamma0);
    r.alpha_mu = (sm - sg) / (sm + sg);
  }
  return r;
}

}  // namespace nagflow
