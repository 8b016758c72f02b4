#pragma once

#include <stdexcept>
#include <vector>

#include "nagflow/types.hpp"

namespace nagflow {

/// Coupling rule between the step size alpha_k and the scaling gamma_k.
/// Each rule pairs with exactly one gamma update:
///   NAG  : L a^2 = (1-a) gamma + mu a, gamma_{k+1} = (1-a) gamma_k + mu a   (explicit)
///   OAG1 : L a^2 = gamma (1+a),        gamma_{k+1} = (gamma_k + mu a)/(1+a) (implicit)
///   MU0  : L a^2 = gamma_{k+1},        gamma_{k+1} = gamma_k / (1+a)        (implicit, mu-free)
enum class StepRule { NAG, OAG1, MU0 };

enum class GammaMode { implicit, explicit_euler };

struct Schedule {
  StepRule rule = StepRule::NAG;
  double mu = 0.0;
  double lip = 1.0;
  double gamma0 = 1.0;
  std::vector<double> alphas;       // length K
  std::vector<double> gammas;       // length K+1, gammas[0] = gamma0
  std::vector<double> lambdas;      // length K+1 accumulated products, lambdas[0] = 1
  std::vector<double> log_lambdas;  // same products in log space (safe under underflow)
};

/// Solves the rule's defining equation for alpha given the current gamma.
/// NAG returns the unique root in (0,1]; OAG1 its closed positive root; MU0
/// the positive root of L a^2 (1+a) = gamma by safeguarded Newton.
double solve_alpha(StepRule rule, double gamma, double mu, double lip);

/// One gamma update. implicit: (gamma + mu a)/(1+a); explicit: (1-a) gamma + mu a.
double gamma_next(GammaMode mode, double gamma, double alpha, double mu);

/// Runs the coupled (alpha_k, gamma_k) recursion for K steps.
Schedule generate_schedule(StepRule rule, double gamma0, double mu, double lip, int K);

/// Time-rescaling factor alpha(tau) with alpha(0) = sqrt(gamma0) and
/// 2 alpha' <= mu - alpha^2.
enum class RescaleKind {
  rational,     // sqrt(g0) b / (sqrt(g0) tau + b), 0 < b <= 2
  closed_form,  // equality solution of 2 a' = mu - a^2
};

struct RescaleFactor {
  RescaleKind kind = RescaleKind::closed_form;
  double mu = 0.0;
  double gamma0 = 1.0;
  double b = 2.0;         // rational only
  double alpha_mu = 0.0;  // closed_form with mu > 0

  double value(double tau) const;
  double derivative(double tau) const;  // analytic d alpha / d tau
  /// Damping coefficient (mu + alpha^2 - alpha') / alpha of the rescaled
  /// second-order model.
  double damping(double tau) const;
};

RescaleFactor make_rescale_factor(RescaleKind kind, double mu, double gamma0,
                                  double b = 2.0);

}  // namespace nagflow
