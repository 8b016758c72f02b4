#pragma once

#include <functional>
#include <vector>

#include "nagflow/types.hpp"

namespace nagflow {

using OdeRhs = std::function<Vec(double, const Vec&)>;

struct OdeStats {
  int accepted = 0;
  int rejected = 0;
  double tol = 0.0;
  bool step_underflow = false;
};

struct OdeSolution {
  std::vector<double> t;   // strictly increasing, t[0] = t0
  std::vector<Vec> y;      // states at the accepted steps
  OdeStats stats;
};

/// One Dormand-Prince 5(4) step of size h. Returns the 5th-order solution and
/// writes the embedded error estimate to *err.
Vec dp5_step(const OdeRhs& f, double t, const Vec& y, double h, Vec* err);

/// Integrates y' = f(t, y) from t0 to t1 with adaptive Dormand-Prince 5(4),
/// local error controlled against atol = rtol = tol per step. States are
/// recorded at every accepted step. On step-size underflow the partial
/// trajectory is returned with stats.step_underflow set.
OdeSolution integrate_dp5(const OdeRhs& f, const Vec& y0, double t0, double t1,
                          double tol);

}  // namespace nagflow
