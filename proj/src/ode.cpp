#include "nagflow/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nagflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Vec dp5_step(const OdeRhs& f, double t, const Vec& y, double h, Vec* err) {
  Vec k1 = f(t, y);
  Vec k2 = f(t + c2 * h, y + h * (a21 * k1));
  Vec k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  Vec k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  Vec k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  Vec k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  Vec y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  if (err) {
    Vec k7 = f(t + h, y5);  // FSAL stage, used only for the error estimate here
    *err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }
  return y5;
}

OdeSolution integrate_dp5(const OdeRhs& f, const Vec& y0, double t0, double t1,
                          double tol) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate_dp5: need t1 > t0");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_dp5: tol must be positive");
  OdeSolution sol;
  sol.stats.tol = tol;
  sol.t.push_back(t0);
  sol.y.push_back(y0);

  double t = t0;
  Vec y = y0;
  // Conservative first step from the initial slope.
  double h = (t1 - t0) * 1e-3;
  {
    const double d0 = y.norm() + 1.0;
    const double d1 = f(t0, y0).norm() + 1e-12;
    h = std::min(h, 0.01 * d0 / d1);
  }
  const double hmin = (t1 - t0) * 1e-14;
  Vec err(y.size());

  while (t < t1) {
    h = std::min(h, t1 - t);
    Vec ynew = dp5_step(f, t, y, h, &err);
    // RMS error scaled against atol = rtol = tol, target 1.
    double acc = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = err[i] / sc;
      acc += r * r;
    }
    const double enorm = std::sqrt(acc / static_cast<double>(y.size()));
    if (enorm <= 1.0) {
      t += h;
      y = std::move(ynew);
      sol.t.push_back(t);
      sol.y.push_back(y);
      ++sol.stats.accepted;
    } else {
      ++sol.stats.rejected;
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(enorm, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
    if (h < hmin && t < t1) {
      sol.stats.step_underflow = true;
      break;
    }
  }
  return sol;
}

}  // namespace nagflow
