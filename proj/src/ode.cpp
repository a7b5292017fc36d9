#include "helicoid/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "format.hpp"
#include "helicoid/errors.hpp"

namespace helicoid {

namespace {

// Fehlberg's coefficients.
constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
constexpr double a21 = 1.0 / 4;
constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104,
                 a65 = -11.0 / 40;
constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430, b5 = -9.0 / 50,
                 b6 = 2.0 / 55;
// fifth-order minus fourth-order weights
constexpr double d1 = b1 - 25.0 / 216, d3 = b3 - 1408.0 / 2565, d4 = b4 - 2197.0 / 4104,
                 d5 = b5 + 1.0 / 5, d6 = b6;

}  // namespace

void integrate_rkf45(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                     const OdeOptions& opts, const OdeObserver& observe) {
  if (!(opts.tol > 0.0)) throw DomainError("integrator tolerance must be > 0");

  double t = t0;
  Eigen::VectorXd y = y0;
  observe({t, y, 0.0});
  if (t1 == t0) return;

  const double span = t1 - t0;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = opts.initial_step > 0 ? dir * opts.initial_step : span / 100.0;
  std::size_t steps = 0;

  while (dir * (t1 - t) > 0) {
    if (++steps > opts.max_steps)
      throw ToleranceNotMet("integrator exceeded " + std::to_string(opts.max_steps) + " steps");
    if (dir * (t + h - t1) > 0) h = t1 - t;

    const Eigen::VectorXd k1 = f(t, y);
    const Eigen::VectorXd k2 = f(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        f(t + c6 * h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));

    const Eigen::VectorXd y_next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd delta = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);

    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = opts.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y_next[i])));
      err = std::max(err, std::abs(delta[i]) / scale);
    }
    if (!std::isfinite(err))
      throw ToleranceNotMet("non-finite state at t = " + detail::fmt_short(t));

    if (err <= 1.0) {
      t = (dir * (t + h - t1) >= 0) ? t1 : t + h;
      y = y_next;
      observe({t, y, delta.cwiseAbs().maxCoeff()});
    }

    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (err > 1.0 && std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
      throw ToleranceNotMet("step size collapsed at t = " + detail::fmt_short(t) +
                            "; tolerance cannot be met");
  }
}

std::vector<OdeStep> integrate_rkf45(const OdeRhs& f, double t0, const Eigen::VectorXd& y0,
                                     double t1, const OdeOptions& opts) {
  std::vector<OdeStep> out;
  integrate_rkf45(f, t0, y0, t1, opts, [&](const OdeStep& s) { out.push_back(s); });
  return out;
}

}  // namespace helicoid
