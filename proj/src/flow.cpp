#include "nagflow/flow.hpp"

#include <cmath>

namespace nagflow {

FlowTrajectory integrate_nag_flow(const SmoothProblem& f, const Vec& x0,
                                  const Vec& v0, double gamma0, double T,
                                  double tol) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("integrate_nag_flow: gamma0 > 0");
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    throw std::invalid_argument("integrate_nag_flow: tol must lie in [1e-12, 1e-4]");
  }
  const int d = f.dim;
  const double mu = f.mu;
  auto rhs = [&f, d, mu](double, const Vec& z) {
    Vec x = z.head(d), v = z.segment(d, d);
    const double gamma = z[2 * d];
    Vec dz(2 * d + 1);
    dz.head(d) = v - x;
    dz.segment(d, d) = (mu * (x - v) - f.gradient(x)) / gamma;
    dz[2 * d] = mu - gamma;
    return dz;
  };
  Vec z0(2 * d + 1);
  z0.head(d) = x0;
  z0.segment(d, d) = v0;
  z0[2 * d] = gamma0;
  OdeSolution sol = integrate_dp5(rhs, z0, 0.0, T, tol);

  FlowTrajectory traj;
  traj.stats = sol.stats;
  traj.t = sol.t;
  traj.x.reserve(sol.y.size());
  traj.v.reserve(sol.y.size());
  traj.gamma.reserve(sol.y.size());
  for (const Vec& z : sol.y) {
    traj.x.push_back(z.head(d));
    traj.v.push_back(z.segment(d, d));
    traj.gamma.push_back(z[2 * d]);
  }
  return traj;
}

RescaledTrajectory integrate_rescaled(const SmoothProblem& f,
                                      const RescaleFactor& rescale,
                                      const Vec& x0, const Vec& w0, double T,
                                      double tol, BetaMode mode) {
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    throw std::invalid_argument("integrate_rescaled: tol must lie in [1e-12, 1e-4]");
  }
  const int d = f.dim;
  const double mu = f.mu;
  const bool beta_ode = mode == BetaMode::ode;
  // State: (y, w, [beta], int_alpha).
  const int nb = beta_ode ? 1 : 0;
  auto rhs = [&, d, mu](double tau, const Vec& z) {
    Vec y = z.head(d), w = z.segment(d, d);
    const double a = rescale.value(tau);
    const double beta = beta_ode ? z[2 * d] : a * a;
    Vec dz(2 * d + nb + 1);
    dz.head(d) = a * (w - y);
    dz.segment(d, d) = a * (mu * (y - w) - f.gradient(y)) / beta;
    if (beta_ode) dz[2 * d] = a * (mu - beta);
    dz[2 * d + nb] = a;
    return dz;
  };
  Vec z0(2 * d + nb + 1);
  z0.head(d) = x0;
  z0.segment(d, d) = w0;
  if (beta_ode) z0[2 * d] = rescale.gamma0;
  z0[2 * d + nb] = 0.0;
  OdeSolution sol = integrate_dp5(rhs, z0, 0.0, T, tol);

  RescaledTrajectory traj;
  traj.rescale = rescale;
  traj.stats = sol.stats;
  traj.tau = sol.t;
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    const Vec& z = sol.y[i];
    traj.y.push_back(z.head(d));
    traj.w.push_back(z.segment(d, d));
    const double a = rescale.value(sol.t[i]);
    traj.beta.push_back(beta_ode ? z[2 * d] : a * a);
    traj.int_alpha.push_back(z[2 * d + nb]);
  }
  return traj;
}

GradientFlowTrajectory integrate_gradient_flow(const SmoothProblem& f,
                                               const Vec& x0, double T,
                                               double tol,
                                               bool exponential_rescale) {
  if (!(tol >= 1e-12 && tol <= 1e-4)) {
    throw std::invalid_argument("integrate_gradient_flow: tol must lie in [1e-12, 1e-4]");
  }
  OdeRhs rhs;
  if (exponential_rescale) {
    rhs = [&f](double s, const Vec& y) { return Vec(-std::exp(s) * f.gradient(y)); };
  } else {
    rhs = [&f](double, const Vec& x) { return Vec(-f.gradient(x)); };
  }
  OdeSolution sol = integrate_dp5(rhs, x0, 0.0, T, tol);
  GradientFlowTrajectory traj;
  traj.rescaled = exponential_rescale;
  traj.stats = sol.stats;
  traj.t = sol.t;
  traj.x = sol.y;
  return traj;
}

namespace {

DecayVerdict weighted_decay_check(const std::vector<double>& weight_exponent,
                                  const std::vector<double>& lyap, double slack) {
  DecayVerdict v;
  double worst = 0.0;
  // Compare against the running minimum of e^{w} L so the check is monotone
  // in the proper sense, not just pairwise.
  double log_min = kInf;
  for (std::size_t i = 0; i < lyap.size(); ++i) {
    if (lyap[i] <= 0.0) continue;  // at the floor; nothing to compare
    const double lw = weight_exponent[i] + std::log(lyap[i]);
    if (lw > log_min) worst = std::max(worst, std::expm1(lw - log_min));
    log_min = std::min(log_min, lw);
  }
  v.worst_increase = worst;
  const double lT = lyap.back();
  const double bound = std::exp(-(weight_exponent.back() - weight_exponent.front())) *
                       lyap.front();
  v.final_excess = bound > 0.0 ? lT / bound - 1.0 : (lT > 0.0 ? kInf : 0.0);
  v.pass = worst <= slack && v.final_excess <= slack;
  return v;
}

}  // namespace

DecayVerdict continuous_lyapunov_check(const FlowTrajectory& traj,
                                       const SmoothProblem& f, const Vec& xstar,
                                       double fstar, double slack) {
  std::vector<double> lyap(traj.t.size()), w(traj.t.size());
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    lyap[i] = f.value(traj.x[i]) - fstar +
              0.5 * traj.gamma[i] * (traj.v[i] - xstar).squaredNorm();
    w[i] = traj.t[i];
  }
  return weighted_decay_check(w, lyap, slack);
}

DecayVerdict rescaled_lyapunov_check(const RescaledTrajectory& traj,
                                     const SmoothProblem& f, const Vec& xstar,
                                     double fstar, double slack) {
  std::vector<double> lyap(traj.tau.size()), w(traj.tau.size());
  for (std::size_t i = 0; i < traj.tau.size(); ++i) {
    lyap[i] = f.value(traj.y[i]) - fstar +
              0.5 * traj.beta[i] * (traj.w[i] - xstar).squaredNorm();
    w[i] = traj.int_alpha[i];
  }
  return weighted_decay_check(w, lyap, slack);
}

}  // namespace nagflow
