#pragma once

// Bour's correspondence between a helicoidal surface of value m and its
// rotational counterpart: orthogonal trajectories of the helices, the
// natural coordinates (rbar, theta_bar), the reduced metric, the phi_R'^2
// expression, and the value-3 minimality equation on theta slices.
//
// Every quantity is evaluated along an orthogonal trajectory, where
// theta_bar is constant; isometry claims are reported, never asserted.

#include <iosfwd>
#include <string>
#include <vector>

#include "helicoid/diffgeo.hpp"
#include "helicoid/errors.hpp"
#include "helicoid/surfaces.hpp"

namespace helicoid {

inline constexpr double kDefaultTrajectoryTol = 1e-9;

/// Metric after substituting d theta = d theta_bar - (F/G) dr.
struct ReducedMetric {
  double Err = 0;    ///< coefficient of dr^2, equals det I / G
  double Gtt = 0;    ///< coefficient of d theta_bar^2, equals G
  double cross = 0;  ///< remaining dr d theta_bar coefficient, 0 up to rounding
};

ReducedMetric reduce_metric(double E, double F, double G);

struct TrajectorySample {
  double r = 0;
  double theta = 0;
  /// Accumulated arc parameter: integral of sqrt(det I / G) dr.
  double rbar = 0;
  double step_error = 0;
  /// Accumulated integral of F/G dr; theta + fg_integral is theta_bar.
  double fg_integral = 0;

  double theta_bar() const { return theta + fg_integral; }
};

/// Integrates d theta / dr = -F/G from (r0, theta0) to r1 with the RKF45
/// pair. Throws DegenerateMetric when det I or G drops to 1e-12 en route.
std::vector<TrajectorySample> trace_orthogonal(const SurfaceSpec& spec, double r0, double theta0,
                                               double r1, double tol = kDefaultTrajectoryTol);

/// Same integration, but keeps the samples gathered before a failure.
struct PartialTrajectory {
  std::vector<TrajectorySample> samples;
  bool complete = true;
  ErrorCode failure = ErrorCode::domain;
  std::string message;
};

PartialTrajectory trace_orthogonal_partial(const SurfaceSpec& spec, double r0, double theta0,
                                           double r1, double tol = kDefaultTrajectoryTol);

struct Correspondence {
  double r_R = 0;
  double theta_R = 0;
};

/// r_R = sqrt(G) at the sample, theta_R = theta_bar of the trajectory.
Correspondence correspondence(const SurfaceSpec& spec, const TrajectorySample& at);

/// Three-term phi_R'^2 expression. det I and G are taken at the helicoidal
/// point (at.r, at.theta); the remaining terms use (r_R, theta_R). Throws
/// DivisionByZero when a bracketed denominator is within 1e-12 of 0. A
/// negative result is returned as is.
double phi_R_prime_squared(const SurfaceSpec& spec, const TrajectorySample& at,
                           const Correspondence& corr);

/// bour_radius pairs (r, theta) with (sqrt G, theta_bar); identity pairs
/// (r, theta) with itself, which is the correspondence when a = 0.
enum class CorrespondenceMode { bour_radius, identity };

struct IsometryRow {
  double r = 0, theta = 0, rbar = 0;
  double r_R = 0, theta_R = 0;
  double k = 0, k_R = 0;
  double phiR_prime_sq = 0;
  bool realizable = true;
  double dtheta_dr = 0;    ///< -F/G, slope of the trajectory
  double discrepancy = 0;  ///< |k - k_R|
  double phi_R = 0;        ///< quadrature of sqrt(max(phi_R'^2, 0)) over r_R
  double E_R = 0, F_R = 0, G_R = 0;
  double reduced_cross = 0;         ///< helicoidal side
  double reduced_err_residual = 0;  ///< Err - det I / G, helicoidal side
  double reduced_cross_R = 0;       ///< rotational side
  double drR_dr_displayed = 0;
  double drR_dr_numeric = 0;
  std::string status = "ok";
};

struct IsometryParams {
  double r0 = 0.5, theta0 = 0.0, r1 = 1.5;
  double tol = kDefaultTrajectoryTol;
  CorrespondenceMode mode = CorrespondenceMode::bour_radius;
};

struct IsometryReport {
  SurfaceSpec spec;
  IsometryParams params;
  std::vector<IsometryRow> rows;
  bool truncated = false;
  std::string truncation_reason;

  /// Columns: r, theta, rbar, r_R, theta_R, k, k_R, phiR_prime_sq,
  /// realizable, then the diagnostic columns of IsometryRow.
  void write_csv(std::ostream& os) const;
  std::string summary_json() const;
};

IsometryReport isometry_report(const SurfaceSpec& spec, const IsometryParams& params);

/// Left-hand side of the value-3 minimality equation; zero iff H = 0.
double minimality_residual(double r, double theta, double a, double dphi, double ddphi);

/// Coefficient of phi'' in the minimality equation.
double minimality_phi2_coefficient(double r, double theta, double a);

struct SlicePoint {
  double r = 0;
  double dphi = 0;
  double ddphi = 0;  ///< from the equation at the accepted state
  double residual = 0;
};

/// Solves the minimality equation at fixed theta as a first-order ODE in
/// phi'(r). Throws SingularCoefficient when the path reaches r = 1 (or the
/// phi'' coefficient drops below 1e-10) and ToleranceNotMet when an
/// accepted step leaves |residual| >= tol.
std::vector<SlicePoint> solve_slice_ode(double theta, double a, double r0, double dphi0,
                                        double r1, double tol = kDefaultTrajectoryTol);

}  // namespace helicoid
