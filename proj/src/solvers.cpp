#include "nagflow/solvers.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <map>

namespace nagflow {

std::string scheme_name(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::GD: return "gd";
    case SchemeKind::IMPLICIT: return "implicit";
    case SchemeKind::GS: return "gs";
    case SchemeKind::GS_CORRECTED: return "gs_corrected";
    case SchemeKind::NAG: return "nag";
    case SchemeKind::OAG1: return "oag1";
    case SchemeKind::OAG2: return "oag2";
    case SchemeKind::FISTA_SIMPLE: return "fista";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  static const std::map<std::string, SchemeKind> table = {
      {"gd", SchemeKind::GD},
      {"implicit", SchemeKind::IMPLICIT},
      {"gs", SchemeKind::GS},
      {"gs_corrected", SchemeKind::GS_CORRECTED},
      {"nag", SchemeKind::NAG},
      {"oag1", SchemeKind::OAG1},
      {"oag2", SchemeKind::OAG2},
      {"fista", SchemeKind::FISTA_SIMPLE},
  };
  auto it = table.find(name);
  if (it == table.end()) {
    std::string valid;
    for (const auto& [n, s] : table) valid += (valid.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown scheme '" + name + "' (valid: " + valid + ")");
  }
  return it->second;
}

int restart_period(double lip, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("restart_period: sigma must be positive");
  return static_cast<int>(std::lround(std::exp(1.0) * std::sqrt(4.0 * lip / sigma)));
}

SolverState step_gd(const SmoothProblem& f, const SolverState& s, double alpha) {
  SolverState n = s;
  n.x = s.x - alpha * f.gradient(s.x);
  n.k = s.k + 1;
  n.last_alpha = alpha;
  n.last_y.reset();
  return n;
}

SolverState step_implicit(const SmoothProblem& f, const SolverState& s, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("step_implicit: alpha must be positive");
  const double mu = f.mu;
  const double gamma = s.gamma;
  // Eliminating v from the coupled system leaves
  //   [gamma(1+a) + a mu] x+ + a^2 grad f(x+) = gamma (x + a v) + a mu x,
  // then v+ = ((1+a) x+ - x)/a.
  const double coef = gamma * (1.0 + alpha) + alpha * mu;
  const Vec rhs = gamma * (s.x + alpha * s.v) + alpha * mu * s.x;
  Vec xn;
  if (f.quadratic) {
    Mat M = alpha * alpha * (*f.quadratic);
    M.diagonal().array() += coef;
    xn = M.llt().solve(rhs);
  } else {
    // Damped Newton on r(x) = coef x + a^2 grad f(x) - rhs with a
    // finite-difference Jacobian; the reduced problem is coef-strongly
    // monotone so this converges from the warm start x_k.
    xn = s.x;
    const int d = f.dim;
    const double tol = 1e-12 * std::max(1.0, rhs.norm());
    auto residual = [&](const Vec& x) { return Vec(coef * x + alpha * alpha * f.gradient(x) - rhs); };
    Vec r = residual(xn);
    for (int it = 0; it < 100 && r.norm() > tol; ++it) {
      Mat J(d, d);
      const double h = 1e-7 * std::max(1.0, xn.norm());
      for (int j = 0; j < d; ++j) {
        Vec xp = xn;
        xp[j] += h;
        J.col(j) = (residual(xp) - r) / h;
      }
      Vec dx = J.partialPivLu().solve(-r);
      double step = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        Vec xc = xn + step * dx;
        Vec rc = residual(xc);
        if (rc.norm() < r.norm() || rc.norm() <= tol) {
          xn = xc;
          r = rc;
          break;
        }
        step *= 0.5;
        if (ls == 59) {
          throw std::runtime_error(
              "step_implicit: inner Newton stalled, residual " + std::to_string(r.norm()));
        }
      }
    }
    if (r.norm() > tol) {
      throw std::runtime_error("step_implicit: inner solve did not reach tolerance, residual " +
                               std::to_string(r.norm()));
    }
  }
  SolverState n;
  n.x = xn;
  n.v = ((1.0 + alpha) * xn - s.x) / alpha;
  n.gamma = (gamma + alpha * mu) / (1.0 + alpha);
  n.k = s.k + 1;
  n.last_alpha = alpha;
  return n;
}

SolverState step_gs(const SmoothProblem& f, const SolverState& s, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("step_gs: alpha must be positive");
  const double mu = f.mu, gamma = s.gamma;
  SolverState n;
  n.x = (s.x + alpha * s.v) / (1.0 + alpha);
  const Vec g = f.gradient(n.x);
  n.v = (gamma * s.v + alpha * mu * n.x - alpha * g) / (gamma + alpha * mu);
  n.gamma = (gamma + alpha * mu) / (1.0 + alpha);
  n.k = s.k + 1;
  n.last_alpha = alpha;
  return n;
}

SolverState step_gs_corrected(const SmoothProblem& f, const SolverState& s) {
  const double mu = f.mu, L = f.lip, gamma = s.gamma;
  const double alpha = solve_alpha(StepRule::OAG1, gamma, mu, L);
  const Vec y = (s.x + alpha * s.v) / (1.0 + alpha);
  const Vec g = f.gradient(y);
  SolverState n;
  n.v = (gamma * s.v + alpha * mu * y - alpha * g) / (gamma + alpha * mu);
  n.x = y - g / L;
  n.gamma = (gamma + alpha * mu) / (1.0 + alpha);
  n.k = s.k + 1;
  n.last_alpha = alpha;
  n.last_y = y;
  return n;
}

SolverState step_nag(const SmoothProblem& f, const SolverState& s, const XUpdate& x_update) {
  const double mu = f.mu, L = f.lip, gamma = s.gamma;
  const double alpha = solve_alpha(StepRule::NAG, gamma, mu, L);
  const double gamma_next = (1.0 - alpha) * gamma + mu * alpha;
  const Vec y = (alpha * gamma * s.v + gamma_next * s.x) / (gamma + mu * alpha);
  const Vec g = f.gradient(y);
  SolverState n;
  if (x_update) {
    n.x = x_update(f, y, g);
    // Any replacement step must keep the certified decrease; rounding slack
    // scales with the magnitudes involved.
    const double fy = f.value(y);
    const double need = fy - 0.5 / L * g.squaredNorm();
    const double slack = 1e-12 * std::max({1.0, std::abs(fy), std::abs(need)});
    if (f.value(n.x) > need + slack) {
      throw std::runtime_error(
          "step_nag: custom x-update violates f(x_{k+1}) <= f(y_k) - ||grad f(y_k)||^2/(2L)");
    }
  } else {
    n.x = y - g / L;
  }
  n.v = ((1.0 - alpha) * gamma * s.v + alpha * (mu * y - g)) / gamma_next;
  n.gamma = gamma_next;
  n.k = s.k + 1;
  n.last_alpha = alpha;
  n.last_y = y;
  return n;
}

SolverState step_oag1(const CompositeProblem& problem, const SolverState& s) {
  const SmoothProblem& f = problem.smooth;
  const double mu = f.mu, L = f.lip, gamma = s.gamma;
  const double alpha = solve_alpha(StepRule::OAG1, gamma, mu, L);
  const Vec y = (s.x + alpha * s.v) / (1.0 + alpha);
  const Vec G = gradient_mapping(problem, y, 1.0 / L);
  SolverState n;
  n.x = y - G / L;
  n.v = (gamma * s.v + mu * alpha * y - alpha * G) / (gamma + mu * alpha);
  n.gamma = (gamma + mu * alpha) / (1.0 + alpha);
  n.k = s.k + 1;
  n.last_alpha = alpha;
  n.last_y = y;
  return n;
}

SolverState step_oag2(const CompositeProblem& problem, const SolverState& s) {
  const SmoothProblem& f = problem.smooth;
  const double mu = f.mu, L = f.lip, gamma = s.gamma;
  const double alpha = solve_alpha(StepRule::NAG, gamma, mu, L);
  const double gamma_next = (1.0 - alpha) * gamma + mu * alpha;
  const Vec y = (alpha * gamma * s.v + gamma_next * s.x) / (gamma + mu * alpha);
  const Vec G = gradient_mapping(problem, y, 1.0 / L);
  SolverState n;
  n.x = y - G / L;
  n.v = ((1.0 - alpha) * gamma * s.v + alpha * (mu * y - G)) / gamma_next;
  n.gamma = gamma_next;
  n.k = s.k + 1;
  n.last_alpha = alpha;
  n.last_y = y;
  return n;
}

FistaState fista_init(const CompositeProblem& problem, const Vec& x0, double gamma0) {
  FistaState s;
  s.x = x0;
  s.x_prev = x0;
  s.y = x0;
  s.alpha = solve_alpha(StepRule::NAG, gamma0, problem.smooth.mu, problem.smooth.lip);
  s.k = 0;
  return s;
}

FistaState step_fista(const CompositeProblem& problem, const FistaState& s) {
  const double mu = problem.smooth.mu, L = problem.smooth.lip;
  FistaState n;
  n.x = s.y - gradient_mapping(problem, s.y, 1.0 / L) / L;
  n.x_prev = s.x;
  // L a_{k+1}^2 = L a_k^2 (1 - a_{k+1}) + mu a_{k+1}: the running gamma is
  // L a_k^2.
  n.alpha = solve_alpha(StepRule::NAG, L * s.alpha * s.alpha, mu, L);
  const double beta = s.alpha * (1.0 - s.alpha) / (s.alpha * s.alpha + n.alpha);
  n.y = n.x + beta * (n.x - s.x);
  n.k = s.k + 1;
  return n;
}

namespace {

struct Reference {
  bool available = false;
  Vec xstar;
  double fstar = kNaN;
};

Reference problem_reference(const CompositeProblem& problem) {
  Reference r;
  if (!problem.minimizer) return r;
  r.available = true;
  r.xstar = *problem.minimizer;
  r.fstar = problem.optimal_value ? *problem.optimal_value : problem.value(r.xstar);
  return r;
}

bool needs_smooth_only(SchemeKind scheme) {
  return scheme == SchemeKind::GD || scheme == SchemeKind::IMPLICIT ||
         scheme == SchemeKind::GS || scheme == SchemeKind::GS_CORRECTED ||
         scheme == SchemeKind::NAG;
}

}  // namespace

RunTrace run(SchemeKind scheme, const CompositeProblem& problem, const RunConfig& config) {
  const SmoothProblem& f = problem.smooth;
  if (config.x0.size() != f.dim) {
    throw std::invalid_argument("run: x0 dimension does not match the problem");
  }
  if (needs_smooth_only(scheme) && !problem.nonsmooth.zero) {
    throw std::invalid_argument("run: scheme '" + scheme_name(scheme) +
                                "' requires a smooth problem (zero nonsmooth part)");
  }
  if (config.max_iter < 0) throw std::invalid_argument("run: max_iter must be >= 0");
  if (config.gamma_cycle > 0 && !(f.mu > 0.0)) {
    throw std::invalid_argument("run: gamma_cycle needs mu > 0");
  }

  const double gamma0 = config.gamma0 > 0.0 ? config.gamma0 : f.lip;
  const double fixed_alpha = config.alpha > 0.0 ? config.alpha : 1.0 / f.lip;
  const Vec v0 = config.v0.size() == f.dim ? config.v0 : config.x0;
  const Reference ref = problem_reference(problem);

  RunTrace trace;
  trace.scheme = scheme;
  trace.has_reference = ref.available;
  trace.gamma0 = gamma0;
  trace.mu = f.mu;
  trace.lip = f.lip;
  if (ref.available) {
    trace.minimizer = ref.xstar;
    trace.optimal_value = ref.fstar;
  }

  SolverState state;
  state.x = config.x0;
  state.v = v0;
  state.gamma = gamma0;
  FistaState fstate;
  if (scheme == SchemeKind::FISTA_SIMPLE) fstate = fista_init(problem, config.x0, gamma0);

  auto record = [&](const SolverState& s, bool restarted) {
    TraceRecord rec;
    rec.k = s.k;
    rec.x = s.x;
    rec.v = s.v;
    rec.gamma = s.gamma;
    rec.alpha = s.last_alpha;
    rec.grad_norm = f.gradient(s.x).norm();
    rec.restarted = restarted;
    if (ref.available) {
      rec.gap = problem.value(s.x) - ref.fstar;
      rec.lyapunov = rec.gap + 0.5 * s.gamma * (s.v - ref.xstar).squaredNorm();
      const TraceRecord* prev = trace.records.empty() ? nullptr : &trace.records.back();
      if (prev && prev->lyapunov > 0.0) rec.factor = rec.lyapunov / prev->lyapunov;
    }
    trace.records.push_back(std::move(rec));
  };

  record(state, false);
  const double gap0 = ref.available
                          ? std::max(trace.records[0].gap, 1e-12 * (1.0 + std::abs(ref.fstar)))
                          : kNaN;
  double f_prev = problem.value(state.x);

  const RestartPolicy& policy = config.restart;
  int period = 0;
  if (policy.kind == RestartPolicy::Kind::fixed) {
    period = policy.period > 0 ? policy.period : restart_period(f.lip, policy.sigma);
    if (period < 1) throw std::invalid_argument("run: restart period must be >= 1");
  }

  int since_restart = 0;
  bool gamma_cycle_high = true;
  for (int k = 0; k < config.max_iter; ++k) {
    switch (scheme) {
      case SchemeKind::GD: state = step_gd(f, state, fixed_alpha); break;
      case SchemeKind::IMPLICIT: state = step_implicit(f, state, fixed_alpha); break;
      case SchemeKind::GS: state = step_gs(f, state, fixed_alpha); break;
      case SchemeKind::GS_CORRECTED: state = step_gs_corrected(f, state); break;
      case SchemeKind::NAG: state = step_nag(f, state); break;
      case SchemeKind::OAG1: state = step_oag1(problem, state); break;
      case SchemeKind::OAG2: state = step_oag2(problem, state); break;
      case SchemeKind::FISTA_SIMPLE: {
        fstate = step_fista(problem, fstate);
        state.x = fstate.x;
        state.v = fstate.y;  // extrapolated point; no momentum variable exists
        state.gamma = f.lip * fstate.alpha * fstate.alpha;
        state.k = fstate.k;
        state.last_alpha = fstate.alpha;
        break;
      }
    }
    ++since_restart;

    bool restarted = false;
    const double f_cur = problem.value(state.x);
    if (policy.kind == RestartPolicy::Kind::fixed && since_restart >= period) {
      restarted = true;
    } else if (policy.kind == RestartPolicy::Kind::adaptive && f_cur > f_prev) {
      restarted = true;
    }
    if (restarted && scheme != SchemeKind::FISTA_SIMPLE) {
      state.v = state.x;
      state.gamma = gamma0;
      since_restart = 0;
    } else if (restarted) {
      fstate = fista_init(problem, state.x, gamma0);
      state.v = fstate.y;
      state.gamma = gamma0;
      since_restart = 0;
    }
    if (config.gamma_cycle > 0 && since_restart > 0 &&
        state.k % config.gamma_cycle == 0) {
      state.gamma = gamma_cycle_high ? f.mu : f.lip;
      gamma_cycle_high = !gamma_cycle_high;
    }
    f_prev = f_cur;

    record(state, restarted);
    const TraceRecord& rec = trace.records.back();
    if (ref.available && rec.gap <= config.gap_tol) break;
    if (ref.available && rec.gap > 1e6 * gap0) {
      trace.aborted = true;
      trace.abort_reason = "objective gap grew past one million times its initial value";
      break;
    }
    if (!ref.available && !std::isfinite(f_cur)) {
      trace.aborted = true;
      trace.abort_reason = "objective value is no longer finite";
      break;
    }
  }
  return trace;
}

RunTrace restart_wrap(SchemeKind scheme, const RestartPolicy& policy,
                      const CompositeProblem& problem, RunConfig config) {
  config.restart = policy;
  return run(scheme, problem, config);
}

}  // namespace nagflow
