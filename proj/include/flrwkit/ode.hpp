#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "flrwkit/dual.hpp"
#include "flrwkit/errors.hpp"

namespace flrwkit {

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 picks |x1 - x0| / 100
  double min_step = 1e-14;  // relative to |x1 - x0|
  std::size_t max_steps = 200000;
};

enum class OdeStatus {
  reached_end,
  stopped,  // the stop predicate fired after an accepted step
  blocked,  // step size underflow: rhs failures or rejected states
  max_steps,
};

template <class Y>
struct OdePoint {
  double x;
  Y y;
};

template <class Y>
struct OdeOutcome {
  OdeStatus status = OdeStatus::reached_end;
  OdePoint<Y> last{};
  OdePoint<Y> previous{};  // point before `last`; equal to it when no step was taken
  double last_step = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<OdePoint<Y>> trajectory;  // filled when recording is requested
};

template <class Y>
struct DopriStep {
  Y y;
  Y err;
};

/// One Dormand-Prince 5(4) step of size h from (x, y); the fifth-order
/// solution is propagated. Rhs exceptions propagate to the caller.
template <class Y, class Rhs>
DopriStep<Y> dopri_step(Rhs& f, double x, const Y& y, double h) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const Y k1 = f(x, y);
  const Y k2 = f(x + c2 * h, y + Y(h * a21) * k1);
  const Y k3 = f(x + c3 * h, y + Y(h) * (Y(a31) * k1 + Y(a32) * k2));
  const Y k4 = f(x + c4 * h, y + Y(h) * (Y(a41) * k1 + Y(a42) * k2 + Y(a43) * k3));
  const Y k5 = f(x + c5 * h, y + Y(h) * (Y(a51) * k1 + Y(a52) * k2 + Y(a53) * k3 + Y(a54) * k4));
  const Y k6 = f(x + h, y + Y(h) * (Y(a61) * k1 + Y(a62) * k2 + Y(a63) * k3 + Y(a64) * k4 +
                                     Y(a65) * k5));
  const Y y5 = y + Y(h) * (Y(b1) * k1 + Y(b3) * k3 + Y(b4) * k4 + Y(b5) * k5 + Y(b6) * k6);
  const Y k7 = f(x + h, y5);
  const Y err = Y(h) * (Y(e1) * k1 + Y(e3) * k3 + Y(e4) * k4 + Y(e5) * k5 + Y(e6) * k6 +
                        Y(e7) * k7);
  return {y5, err};
}

/// Adaptive Dormand-Prince integration of y' = f(x, y) from x0 towards x1.
///
/// `admissible(x, y)` rejects trial states (the step is halved instead), which
/// keeps the solution on one side of a singular locus. `stop(x, y)` is checked
/// after every accepted step. Step control looks at the innermost scalar of y
/// only, so Dual states carry their sensitivities along the same steps.
template <class Y, class Rhs, class Admissible, class Stop>
OdeOutcome<Y> integrate_ode(Rhs f, double x0, Y y0, double x1, const OdeOptions& opt,
                            Admissible admissible, Stop stop, bool record = false) {
  OdeOutcome<Y> out;
  out.last = {x0, y0};
  out.previous = out.last;
  if (record) out.trajectory.push_back(out.last);
  const double span = x1 - x0;
  if (span == 0.0) return out;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = opt.initial_step > 0 ? dir * opt.initial_step : span / 100.0;
  const double h_min = std::abs(span) * opt.min_step;
  double x = x0;
  Y y = y0;
  while (true) {
    if (out.accepted + out.rejected >= opt.max_steps) {
      out.status = OdeStatus::max_steps;
      return out;
    }
    if (std::abs(h) < h_min) {
      out.status = OdeStatus::blocked;
      return out;
    }
    bool last_step = false;
    if (dir * (x + h - x1) >= 0.0) {
      h = x1 - x;
      last_step = true;
    }
    bool ok = true;
    DopriStep<Y> s{};
    try {
      s = dopri_step(f, x, y, h);
      ok = all_finite(s.y) && all_finite(s.err) && admissible(x + h, s.y);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      ++out.rejected;
      h *= 0.5;
      continue;
    }
    const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(primal(y)), std::abs(primal(s.y)));
    const double ratio = std::abs(primal(s.err)) / scale;
    if (ratio > 1.0) {
      ++out.rejected;
      h *= std::max(0.1, 0.9 * std::pow(ratio, -0.2));
      continue;
    }
    ++out.accepted;
    out.previous = {x, y};
    out.last_step = h;
    x = last_step ? x1 : x + h;
    y = s.y;
    out.last = {x, y};
    if (record) out.trajectory.push_back(out.last);
    if (last_step) {
      out.status = OdeStatus::reached_end;
      return out;
    }
    if (stop(x, y)) {
      out.status = OdeStatus::stopped;
      return out;
    }
    const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
    h *= grow;
  }
}

}  // namespace flrwkit
