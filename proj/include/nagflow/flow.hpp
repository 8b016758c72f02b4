#pragma once

#include "nagflow/ode.hpp"
#include "nagflow/problems.hpp"
#include "nagflow/schedules.hpp"

namespace nagflow {

/// Trajectory of the momentum system x' = v - x, gamma v' = mu(x-v) - grad f(x),
/// gamma' = mu - gamma, sampled at the integrator's accepted steps.
struct FlowTrajectory {
  std::vector<double> t;
  std::vector<Vec> x;
  std::vector<Vec> v;
  std::vector<double> gamma;
  OdeStats stats;
};

/// Trajectory of the rescaled system y' = alpha (w - y),
/// beta w' = alpha [mu (y - w) - grad f(y)], together with the running
/// integral of alpha.
struct RescaledTrajectory {
  std::vector<double> tau;
  std::vector<Vec> y;
  std::vector<Vec> w;
  std::vector<double> beta;
  std::vector<double> int_alpha;  // \int_0^tau alpha
  RescaleFactor rescale;
  OdeStats stats;
};

/// Plain gradient flow x' = -grad f(x); with exponential_rescale the system
/// y'(s) = -e^s grad f(y) (time substitution t = e^s) is integrated instead.
struct GradientFlowTrajectory {
  std::vector<double> t;
  std::vector<Vec> x;
  bool rescaled = false;
  OdeStats stats;
};

FlowTrajectory integrate_nag_flow(const SmoothProblem& f, const Vec& x0,
                                  const Vec& v0, double gamma0, double T,
                                  double tol);

enum class BetaMode {
  alpha_squared,  // beta(tau) = alpha(tau)^2 analytically
  ode,            // beta integrated from beta' = alpha (mu - beta)
};

RescaledTrajectory integrate_rescaled(const SmoothProblem& f,
                                      const RescaleFactor& rescale,
                                      const Vec& x0, const Vec& w0, double T,
                                      double tol,
                                      BetaMode mode = BetaMode::alpha_squared);

GradientFlowTrajectory integrate_gradient_flow(const SmoothProblem& f,
                                               const Vec& x0, double T,
                                               double tol,
                                               bool exponential_rescale = false);

struct DecayVerdict {
  // Largest relative step-to-step increase of the weighted Lyapunov value
  // (0 when it only decreases).
  double worst_increase = 0.0;
  // Final value against the exponential bound, as a ratio minus one.
  double final_excess = 0.0;
  bool pass = false;
};

/// Checks e^t L(t) non-increasing along the trajectory and
/// L(T) <= e^{-T} L(0), both within the given relative slack.
/// L(t) = f(x) - fstar + gamma/2 ||v - xstar||^2.
DecayVerdict continuous_lyapunov_check(const FlowTrajectory& traj,
                                       const SmoothProblem& f, const Vec& xstar,
                                       double fstar, double slack);

/// Same check for a rescaled trajectory with weight e^{\int alpha}.
DecayVerdict rescaled_lyapunov_check(const RescaledTrajectory& traj,
                                     const SmoothProblem& f, const Vec& xstar,
                                     double fstar, double slack);

}  // namespace nagflow
