#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nagflow/problems.hpp"
#include "nagflow/schedules.hpp"

namespace nagflow {

enum class SchemeKind {
  GD,
  IMPLICIT,
  GS,            // plain lower-triangular splitting, no correction step
  GS_CORRECTED,  // splitting plus one gradient descent step
  NAG,
  OAG1,
  OAG2,
  FISTA_SIMPLE,
};

std::string scheme_name(SchemeKind scheme);
SchemeKind scheme_from_name(const std::string& name);

struct SolverState {
  Vec x;
  Vec v;
  double gamma = 1.0;
  int k = 0;
  double last_alpha = kNaN;
  std::optional<Vec> last_y;
};

/// Two-point state of the momentum-eliminated composite scheme.
struct FistaState {
  Vec x;       // x_k
  Vec x_prev;  // x_{k-1}
  Vec y;       // extrapolated point y_k
  double alpha = 0.0;
  int k = 0;
};

struct RestartPolicy {
  enum class Kind { none, fixed, adaptive } kind = Kind::none;
  int period = 0;      // fixed; computed from sigma when 0
  double sigma = 0.0;  // quadratic-growth constant, fixed kind only
};

/// Optimal fixed-restart period round(e sqrt(4 L / sigma)).
int restart_period(double lip, double sigma);

struct TraceRecord {
  int k = 0;
  Vec x;
  Vec v;
  double gamma = kNaN;
  double alpha = kNaN;      // step used to reach this record (NaN at k = 0)
  double gap = kNaN;        // F(x_k) - F*, when the reference is known
  double lyapunov = kNaN;   // F(x_k) - F* + gamma/2 ||v_k - x*||^2
  double factor = kNaN;     // realized L_k / L_{k-1}
  double bound = kNaN;      // theoretical envelope, filled by the verifier
  double grad_norm = kNaN;  // ||grad f(x_k)|| (smooth part)
  bool restarted = false;
};

struct RunTrace {
  SchemeKind scheme = SchemeKind::GD;
  std::vector<TraceRecord> records;
  bool aborted = false;       // divergence guard tripped
  std::string abort_reason;
  bool has_reference = false;
  double gamma0 = kNaN;
  double mu = 0.0, lip = 1.0;
  double optimal_value = kNaN;
  Vec minimizer;
};

struct RunConfig {
  int max_iter = 100;
  double gap_tol = 0.0;       // stop once gap <= gap_tol (reference needed)
  double gamma0 = -1.0;       // < 0 means the default L
  double alpha = -1.0;        // fixed step for GD/IMPLICIT/GS; < 0 -> 1/L
  Vec x0;
  Vec v0;                     // empty -> x0
  RestartPolicy restart;
  // Optional experiment: reset gamma to lip and mu alternately with this
  // period (0 = off). Nothing is asserted about it.
  int gamma_cycle = 0;
};

// One step of each scheme. All step functions are pure: state in, state out.
SolverState step_gd(const SmoothProblem& f, const SolverState& s, double alpha);
SolverState step_implicit(const SmoothProblem& f, const SolverState& s, double alpha);
SolverState step_gs(const SmoothProblem& f, const SolverState& s, double alpha);
SolverState step_gs_corrected(const SmoothProblem& f, const SolverState& s);

/// Certified x-update for the momentum scheme: must satisfy
/// f(x_next) <= f(y) - ||grad f(y)||^2 / (2L), checked at runtime.
using XUpdate = std::function<Vec(const SmoothProblem&, const Vec& y, const Vec& grad_y)>;
SolverState step_nag(const SmoothProblem& f, const SolverState& s,
                     const XUpdate& x_update = nullptr);

SolverState step_oag1(const CompositeProblem& problem, const SolverState& s);
SolverState step_oag2(const CompositeProblem& problem, const SolverState& s);

FistaState fista_init(const CompositeProblem& problem, const Vec& x0, double gamma0);
FistaState step_fista(const CompositeProblem& problem, const FistaState& s);

/// Driver: runs `scheme` on the composite problem (schemes GD..NAG require a
/// zero nonsmooth part) until max_iter or the gap tolerance, recording the
/// full trace. Divergence (gap growing one million-fold) aborts the run with
/// the partial trace.
RunTrace run(SchemeKind scheme, const CompositeProblem& problem, const RunConfig& config);

/// run() with a restart policy: fixed resets (gamma, v) <- (gamma0, x) every
/// period; adaptive resets when the objective value increases.
RunTrace restart_wrap(SchemeKind scheme, const RestartPolicy& policy,
                      const CompositeProblem& problem, RunConfig config);

}  // namespace nagflow
