#pragma once

#include "nagflow/solvers.hpp"

namespace nagflow {

/// F(x) - F* + gamma/2 ||v - x*||^2 for the given state.
double discrete_lyapunov(const CompositeProblem& problem, const SolverState& state,
                         const Vec& xstar, double fstar);

/// Published decay envelope at step k, scaled by the matching constant.
/// With gamma0 >= lip, k >= 1 and C0 given, the gamma0 >= L form applies
/// (constant C0 = F(x0) - F* + L/2 ||v0 - x*||^2); otherwise the base form
/// scaled by L0. Schemes without a proved envelope are rejected.
double rate_envelope(SchemeKind scheme, int k, double gamma0, double gamma1,
                     double mu, double lip, double L0,
                     std::optional<double> C0 = std::nullopt);

struct TraceVerdict {
  // Worst relative violation of the scheme's per-step inequality, after an
  // absolute allowance of 1e-14:  max_k (lhs_k - rhs_k - 1e-14) / scale_k.
  double worst_violation = -kInf;
  int worst_index = -1;
  // Worst relative excess over the cumulative envelope (schemes with one).
  double worst_envelope_excess = -kInf;
  int worst_envelope_index = -1;
  bool contraction_pass = false;
  bool envelope_pass = true;  // stays true when no envelope applies
  bool pass = false;
};

/// Per-iteration check of the scheme's proved inequality along a trace:
///   IMPLICIT, GS_CORRECTED, OAG1 : L_{k+1} (1 + alpha_k) <= L_k
///   NAG, OAG2                    : L_{k+1} <= (1 - alpha_k) L_k
///   GS                           : L_{k+1} - L_k <= -alpha L_{k+1}
///                                  + alpha^2/(2 gamma_k) ||grad f(x_{k+1})||^2
/// plus the cumulative envelope for the four schemes that have one.
/// Restart boundaries are excluded from the per-step comparison.
/// Tolerances: relative 1e-10 with absolute allowance 1e-14.
TraceVerdict verify_trace(const RunTrace& trace, SchemeKind scheme);

/// Fills each record's `bound` with the scheme's envelope (no-op for schemes
/// without one).
void annotate_envelope(RunTrace& trace);

}  // namespace nagflow
