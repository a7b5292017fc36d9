#pragma once

// Adaptive Runge-Kutta-Fehlberg 4(5) integrator. Steps are propagated with
// the fifth-order solution; the embedded fourth-order one drives step-size
// control.

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <vector>

namespace helicoid {

struct OdeOptions {
  /// Mixed absolute/relative tolerance: |y5 - y4| <= tol (1 + |y|) per component.
  double tol = 1e-9;
  std::size_t max_steps = 1'000'000;
  /// 0 picks |t1 - t0| / 100.
  double initial_step = 0.0;
};

struct OdeStep {
  double t = 0;
  Eigen::VectorXd y;
  /// max |y5 - y4| of the step that produced this state (0 at the start).
  double error = 0;
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using OdeObserver = std::function<void(const OdeStep&)>;

/// Integrates y' = f(t, y) from t0 to t1 (either direction). The observer
/// sees the initial state and then every accepted step, so a caller keeps
/// its partial solution if f throws midway. Throws ToleranceNotMet when the
/// step size collapses or max_steps is exceeded.
void integrate_rkf45(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                     const OdeOptions& opts, const OdeObserver& observe);

/// Collects every accepted step.
std::vector<OdeStep> integrate_rkf45(const OdeRhs& f, double t0, const Eigen::VectorXd& y0,
                                     double t1, const OdeOptions& opts = {});

}  // namespace helicoid
