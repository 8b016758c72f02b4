#include "nagflow/lyapunov.hpp"

#include <cmath>

namespace nagflow {

namespace {

constexpr double kRelTol = 1e-10;
constexpr double kAbsTol = 1e-14;

double base_envelope(SchemeKind scheme, int k, double gamma0, double gamma1,
                     double mu, double lip, double L0) {
  const double sg = std::sqrt(gamma0), sL = std::sqrt(lip);
  const double sub = 4.0 * lip / ((sg * k + 2.0 * sL) * (sg * k + 2.0 * sL));
  double linear;
  if (scheme == SchemeKind::GS_CORRECTED || scheme == SchemeKind::OAG1) {
    const double q = std::sqrt(std::min(gamma0, mu) / lip);
    linear = std::pow(1.0 + q, -static_cast<double>(k));
  } else {
    const double q = std::sqrt(std::min(gamma1, mu) / lip);
    linear = std::pow(1.0 - q, static_cast<double>(k));
  }
  return L0 * std::min(sub, linear);
}

double large_gamma_envelope(SchemeKind scheme, int k, double mu, double lip, double C0) {
  const double sub = 4.0 / (static_cast<double>(k) * k);
  const double q = std::sqrt(mu / lip);
  double linear;
  if (scheme == SchemeKind::GS_CORRECTED || scheme == SchemeKind::OAG1) {
    linear = std::pow(1.0 + q, static_cast<double>(1 - k));
  } else {
    linear = std::pow(1.0 - q, static_cast<double>(k - 1));
  }
  return C0 * std::min(sub, linear);
}

}  // namespace

double discrete_lyapunov(const CompositeProblem& problem, const SolverState& state,
                         const Vec& xstar, double fstar) {
  return problem.value(state.x) - fstar +
         0.5 * state.gamma * (state.v - xstar).squaredNorm();
}

double rate_envelope(SchemeKind scheme, int k, double gamma0, double gamma1,
                     double mu, double lip, double L0, std::optional<double> C0) {
  switch (scheme) {
    case SchemeKind::GS_CORRECTED:
    case SchemeKind::NAG:
    case SchemeKind::OAG1:
    case SchemeKind::OAG2:
      break;
    default:
      throw std::invalid_argument("rate_envelope: no proved envelope for scheme '" +
                                  scheme_name(scheme) + "'");
  }
  if (k < 0) throw std::invalid_argument("rate_envelope: k must be >= 0");
  if (k == 0) return L0;
  if (C0 && gamma0 >= lip) return large_gamma_envelope(scheme, k, mu, lip, *C0);
  return base_envelope(scheme, k, gamma0, gamma1, mu, lip, L0);
}

TraceVerdict verify_trace(const RunTrace& trace, SchemeKind scheme) {
  if (!trace.has_reference) {
    throw std::invalid_argument("verify_trace: trace carries no (x*, F*) reference");
  }
  if (scheme == SchemeKind::GD || scheme == SchemeKind::FISTA_SIMPLE) {
    throw std::invalid_argument("verify_trace: no per-step inequality for scheme '" +
                                scheme_name(scheme) + "'");
  }
  TraceVerdict v;
  const auto& recs = trace.records;
  bool restarted_anywhere = false;

  for (std::size_t i = 1; i < recs.size(); ++i) {
    const TraceRecord& prev = recs[i - 1];
    const TraceRecord& cur = recs[i];
    if (cur.restarted) {
      restarted_anywhere = true;
      continue;  // the reset changes (gamma, v); the inequality does not span it
    }
    const double a = cur.alpha;
    double lhs, rhs, scale;
    switch (scheme) {
      case SchemeKind::IMPLICIT:
      case SchemeKind::GS_CORRECTED:
      case SchemeKind::OAG1:
        lhs = cur.lyapunov * (1.0 + a);
        rhs = prev.lyapunov;
        scale = std::max(prev.lyapunov, kAbsTol);
        break;
      case SchemeKind::NAG:
      case SchemeKind::OAG2:
        lhs = cur.lyapunov;
        rhs = (1.0 - a) * prev.lyapunov;
        scale = std::max(prev.lyapunov, kAbsTol);
        break;
      case SchemeKind::GS: {
        lhs = cur.lyapunov - prev.lyapunov;
        rhs = -a * cur.lyapunov +
              0.5 * a * a / prev.gamma * cur.grad_norm * cur.grad_norm;
        scale = std::max({std::abs(lhs), std::abs(rhs), prev.lyapunov, 1.0});
        break;
      }
      default:
        throw std::logic_error("verify_trace: unhandled scheme");
    }
    const double viol = (lhs - rhs - kAbsTol) / scale;
    if (viol > v.worst_violation) {
      v.worst_violation = viol;
      v.worst_index = static_cast<int>(i);
    }
  }
  v.contraction_pass = v.worst_violation <= kRelTol;

  const bool has_envelope = scheme == SchemeKind::GS_CORRECTED ||
                            scheme == SchemeKind::NAG || scheme == SchemeKind::OAG1 ||
                            scheme == SchemeKind::OAG2;
  if (has_envelope && !restarted_anywhere && recs.size() >= 2) {
    const double L0 = recs[0].lyapunov;
    const double gamma1 = recs[1].gamma;
    std::optional<double> C0;
    if (trace.gamma0 >= trace.lip) {
      C0 = recs[0].gap + 0.5 * trace.lip * (recs[0].v - trace.minimizer).squaredNorm();
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const double env = rate_envelope(scheme, recs[i].k, trace.gamma0, gamma1,
                                       trace.mu, trace.lip, L0, C0);
      const double excess = (recs[i].lyapunov - env - kAbsTol) / std::max(env, kAbsTol);
      if (excess > v.worst_envelope_excess) {
        v.worst_envelope_excess = excess;
        v.worst_envelope_index = static_cast<int>(i);
      }
    }
    v.envelope_pass = v.worst_envelope_excess <= kRelTol;
  }
  v.pass = v.contraction_pass && v.envelope_pass;
  return v;
}

void annotate_envelope(RunTrace& trace) {
  const SchemeKind scheme = trace.scheme;
  const bool has_envelope = scheme == SchemeKind::GS_CORRECTED ||
                            scheme == SchemeKind::NAG || scheme == SchemeKind::OAG1 ||
                            scheme == SchemeKind::OAG2;
  if (!has_envelope || !trace.has_reference || trace.records.size() < 2) return;
  bool restarted = false;
  for (const auto& r : trace.records) restarted = restarted || r.restarted;
  if (restarted) return;  // the cumulative bound assumes an uninterrupted run
  const double L0 = trace.records[0].lyapunov;
  const double gamma1 = trace.records[1].gamma;
  std::optional<double> C0;
  if (trace.gamma0 >= trace.lip) {
    C0 = trace.records[0].gap +
         0.5 * trace.lip * (trace.records[0].v - trace.minimizer).squaredNorm();
  }
  for (auto& rec : trace.records) {
    rec.bound = rate_envelope(scheme, rec.k, trace.gamma0, gamma1, trace.mu,
                              trace.lip, L0, C0);
  }
}

}  // namespace nagflow
