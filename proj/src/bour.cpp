#include "helicoid/bour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "format.hpp"
#include "helicoid/ode.hpp"
#include "helicoid/paperforms.hpp"

namespace helicoid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_value_family(const SurfaceSpec& spec) {
  if (spec.family == Family::classical_helicoid)
    throw DomainError("the Bour correspondence needs a surface of value m");
  spec.validate();
}

// G of the rotational surface of value m.
double rotational_G(double m, double r_R, double theta_R) {
  const double r2 = r_R * r_R;
  return std::pow(r_R, 2 * m - 2) * (r2 * r2 + 2 * r2 * std::cos(2 * m * theta_R) + 1);
}

// 2(m+1) r^{2m+1} + 4m r^{2m-1} cos(2m theta)
double jacobian_bracket(double m, double r, double theta) {
  return 2 * (m + 1) * std::pow(r, 2 * m + 1) +
         4 * m * std::pow(r, 2 * m - 1) * std::cos(2 * m * theta);
}

// Branch points are isolated zeros of det I that a step can jump over, so
// the minimum of det I along each accepted step is located by golden-section
// search on the chord between its end states.
void check_step_regular(const SurfaceSpec& spec, double ra, double ta, double rb, double tb) {
  const auto det_at = [&](double s) {
    return first_form_from_jet(jet(spec, ra + s * (rb - ra), ta + s * (tb - ta))).det();
  };
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = det_at(x1), f2 = det_at(x2);
  for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = det_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = det_at(x2);
    }
  }
  const double s = 0.5 * (lo + hi);
  const double det = std::min({f1, f2, det_at(s)});
  if (!(det > kDegenerateThreshold))
    throw DegenerateMetric("det I = " + detail::fmt_short(det) + " near r = " +
                           detail::fmt_short(ra + s * (rb - ra)) + " inside an accepted step");
}

}  // namespace

ReducedMetric reduce_metric(double E, double F, double G) {
  if (!(G > kDegenerateThreshold))
    throw DegenerateMetric("G = " + detail::fmt_short(G) + " is at or below the threshold");
  const double slope = F / G;
  // E dr^2 + 2F dr (dtb - slope dr) + G (dtb - slope dr)^2, expanded.
  ReducedMetric rm;
  rm.Err = E - 2 * F * slope + G * slope * slope;
  rm.Gtt = G;
  rm.cross = 2 * F - 2 * G * slope;
  return rm;
}

PartialTrajectory trace_orthogonal_partial(const SurfaceSpec& spec, double r0, double theta0,
                                           double r1, double tol) {
  spec.validate();
  if (!(r0 > 0.0) || !(r1 > 0.0)) throw DomainError("trajectory endpoints must be > 0");

  const OdeRhs rhs = [&spec](double r, const Eigen::VectorXd& y) {
    if (!(r > 0.0)) throw DomainError("trajectory left r > 0");
    const FirstForm f = first_form_from_jet(jet(spec, r, y[0]));
    const double det = f.det();
    if (!(f.G > kDegenerateThreshold) || !(det > kDegenerateThreshold))
      throw DegenerateMetric("det I = " + detail::fmt_short(det) + " at r = " +
                             detail::fmt_short(r) + ", theta = " + detail::fmt_short(y[0]));
    Eigen::VectorXd dy(3);
    dy << -f.F / f.G, std::sqrt(det / f.G), f.F / f.G;
    return dy;
  };

  PartialTrajectory out;
  OdeOptions opts;
  opts.tol = tol;
  const Eigen::VectorXd y0 = Eigen::Vector3d(theta0, 0.0, 0.0);
  try {
    // Check the starting point before any step is taken.
    rhs(r0, y0);
    integrate_rkf45(rhs, r0, y0, r1, opts, [&](const OdeStep& s) {
      if (!out.samples.empty()) {
        const TrajectorySample& prev = out.samples.back();
        check_step_regular(spec, prev.r, prev.theta, s.t, s.y[0]);
      }
      out.samples.push_back({s.t, s.y[0], s.y[1], s.error, s.y[2]});
    });
  } catch (const DomainError&) {
    throw;
  } catch (const Error& e) {
    out.complete = false;
    out.failure = e.code();
    out.message = e.what();
  }
  return out;
}

std::vector<TrajectorySample> trace_orthogonal(const SurfaceSpec& spec, double r0, double theta0,
                                               double r1, double tol) {
  PartialTrajectory p = trace_orthogonal_partial(spec, r0, theta0, r1, tol);
  if (!p.complete) {
    if (p.failure == ErrorCode::degenerate_metric) throw DegenerateMetric(p.message);
    throw ToleranceNotMet(p.message);
  }
  return std::move(p.samples);
}

Correspondence correspondence(const SurfaceSpec& spec, const TrajectorySample& at) {
  const FirstForm f = first_form_from_jet(jet(spec, at.r, at.theta));
  if (!(f.G > 0.0)) throw DegenerateMetric("G must be > 0 for the correspondence");
  return {std::sqrt(f.G), at.theta_bar()};
}

double phi_R_prime_squared(const SurfaceSpec& spec, const TrajectorySample& at,
                           const Correspondence& corr) {
  require_value_family(spec);
  const double m = spec.m;
  const FirstForm f = first_form_from_jet(jet(spec, at.r, at.theta));
  const double det = f.det();

  const double num = jacobian_bracket(m, corr.r_R, corr.theta_R);
  const double den = jacobian_bracket(m, at.r, at.theta);
  if (std::abs(den) <= kDegenerateThreshold || std::abs(f.G) <= kDegenerateThreshold)
    throw DivisionByZero("first-term denominator of phi_R'^2 vanishes");

  const double rr = corr.r_R, rr2 = rr * rr;
  const double c = std::cos(2 * m * corr.theta_R);
  const double s = std::sin(2 * m * corr.theta_R);
  const double den2 = rr2 * rr2 + 2 * rr2 * c + 1;
  if (std::abs(den2) <= kDegenerateThreshold)
    throw DivisionByZero("second-term denominator of phi_R'^2 vanishes");

  const double first = num * num * det / (den * den * f.G);
  const double second = 2 * std::pow(rr, 2 * m) * s * s / den2;
  const double third = std::pow(rr, 2 * m - 4) * (rr2 * rr2 - 2 * rr2 * c + 1);
  return first + second - third;
}

IsometryReport isometry_report(const SurfaceSpec& spec, const IsometryParams& params) {
  require_value_family(spec);
  const double m = spec.m;

  IsometryReport rep;
  rep.spec = spec;
  rep.params = params;

  const PartialTrajectory traj =
      trace_orthogonal_partial(spec, params.r0, params.theta0, params.r1, params.tol);

  double phi_R = 0.0;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const TrajectorySample& s = traj.samples[i];
    IsometryRow row;
    row.r = s.r;
    row.theta = s.theta;
    row.rbar = s.rbar;

    const FirstForm f = first_form_from_jet(jet(spec, s.r, s.theta));
    const Correspondence corr = params.mode == CorrespondenceMode::bour_radius
                                    ? correspondence(spec, s)
                                    : Correspondence{s.r, s.theta};
    row.r_R = corr.r_R;
    row.theta_R = corr.theta_R;
    row.k = std::sqrt(f.G);
    row.dtheta_dr = -f.F / f.G;
    row.G_R = rotational_G(m, corr.r_R, corr.theta_R);
    row.k_R = std::sqrt(row.G_R);
    row.discrepancy = std::abs(row.k - row.k_R);

    try {
      row.phiR_prime_sq = phi_R_prime_squared(spec, s, corr);
      row.realizable = row.phiR_prime_sq >= 0.0;
      if (!row.realizable) row.status = "not_realizable";
    } catch (const DivisionByZero&) {
      row.phiR_prime_sq = kNaN;
      row.realizable = false;
      row.status = "division_by_zero";
    }

    const double slope = std::sqrt(std::max(row.phiR_prime_sq, 0.0));
    if (i > 0) {
      const IsometryRow& prev = rep.rows.back();
      const double prev_slope = std::sqrt(std::max(prev.phiR_prime_sq, 0.0));
      if (std::isfinite(slope) && std::isfinite(prev_slope))
        phi_R += 0.5 * (slope + prev_slope) * (row.r_R - prev.r_R);
      row.drR_dr_numeric = (row.r_R - prev.r_R) / (row.r - prev.r);
    } else {
      row.drR_dr_numeric = kNaN;
    }
    row.phi_R = phi_R;

    const double rr2 = corr.r_R * corr.r_R;
    row.E_R = std::pow(corr.r_R, 2 * m - 4) *
                  (rr2 * rr2 - 2 * rr2 * std::cos(2 * m * corr.theta_R) + 1) +
              std::max(row.phiR_prime_sq, 0.0);
    row.F_R = 2 * std::pow(corr.r_R, 2 * m - 1) * std::sin(2 * m * corr.theta_R);

    const ReducedMetric red = reduce_metric(f.E, f.F, f.G);
    row.reduced_cross = red.cross;
    row.reduced_err_residual = red.Err - f.det() / f.G;
    row.reduced_cross_R =
        row.G_R > kDegenerateThreshold ? reduce_metric(row.E_R, row.F_R, row.G_R).cross : kNaN;

    const double jb = jacobian_bracket(m, corr.r_R, corr.theta_R);
    row.drR_dr_displayed = jb != 0.0 ? jacobian_bracket(m, s.r, s.theta) / jb : kNaN;

    rep.rows.push_back(row);
  }

  if (!traj.complete) {
    rep.truncated = true;
    rep.truncation_reason = traj.message;
    IsometryRow flagged;
    for (double* v : {&flagged.r, &flagged.theta, &flagged.rbar, &flagged.r_R, &flagged.theta_R,
                      &flagged.k, &flagged.k_R, &flagged.phiR_prime_sq, &flagged.dtheta_dr,
                      &flagged.discrepancy,
                      &flagged.phi_R, &flagged.E_R, &flagged.F_R, &flagged.G_R,
                      &flagged.reduced_cross, &flagged.reduced_err_residual,
                      &flagged.reduced_cross_R, &flagged.drR_dr_displayed,
                      &flagged.drR_dr_numeric})
      *v = kNaN;
    flagged.realizable = false;
    flagged.status = traj.failure == ErrorCode::degenerate_metric ? "truncated_degenerate"
                                                                  : "truncated_tolerance";
    rep.rows.push_back(flagged);
  }
  return rep;
}

void IsometryReport::write_csv(std::ostream& os) const {
  using detail::fmt17;
  os << "r,theta,rbar,r_R,theta_R,k,k_R,phiR_prime_sq,realizable,dtheta_dr,discrepancy,phi_R,E_R,F_R,G_R,"
        "reduced_cross,reduced_err_residual,reduced_cross_R,drR_dr_displayed,drR_dr_numeric,"
        "status\n";
  for (const IsometryRow& w : rows) {
    os << fmt17(w.r) << ',' << fmt17(w.theta) << ',' << fmt17(w.rbar) << ',' << fmt17(w.r_R)
       << ',' << fmt17(w.theta_R) << ',' << fmt17(w.k) << ',' << fmt17(w.k_R) << ','
       << fmt17(w.phiR_prime_sq) << ',' << (w.realizable ? 1 : 0) << ','
       << fmt17(w.dtheta_dr) << ',' << fmt17(w.discrepancy) << ',' << fmt17(w.phi_R) << ',' << fmt17(w.E_R) << ','
       << fmt17(w.F_R) << ',' << fmt17(w.G_R) << ',' << fmt17(w.reduced_cross) << ','
       << fmt17(w.reduced_err_residual) << ',' << fmt17(w.reduced_cross_R) << ','
       << fmt17(w.drR_dr_displayed) << ',' << fmt17(w.drR_dr_numeric) << ',' << w.status
       << '\n';
  }
}

std::string IsometryReport::summary_json() const {
  nlohmann::ordered_json j;
  j["family"] = std::string(to_string(spec.family));
  j["m"] = spec.m;
  j["a"] = spec.a;
  j["profile"] = spec.profile.id();
  j["r0"] = params.r0;
  j["theta0"] = params.theta0;
  j["r1"] = params.r1;
  j["tol"] = params.tol;
  j["mode"] = params.mode == CorrespondenceMode::bour_radius ? "bour_radius" : "identity";
  j["rows"] = rows.size();
  j["truncated"] = truncated;
  if (truncated) j["truncation_reason"] = truncation_reason;

  double max_disc = 0.0, max_drift = 0.0;
  std::size_t not_realizable = 0;
  const IsometryRow* last = nullptr;
  for (const IsometryRow& w : rows) {
    if (w.status.rfind("truncated", 0) == 0) continue;
    max_disc = std::max(max_disc, w.discrepancy);
    if (params.mode == CorrespondenceMode::bour_radius)
      max_drift = std::max(max_drift, std::abs(w.theta_R - params.theta0));
    if (!w.realizable) ++not_realizable;
    last = &w;
  }
  j["max_discrepancy"] = max_disc;
  j["max_theta_bar_drift"] = max_drift;
  j["not_realizable_rows"] = not_realizable;
  if (last) {
    j["r_end"] = last->r;
    j["theta_end"] = last->theta;
    j["rbar_end"] = last->rbar;
  }
  j["det_I_evaluated_at"] = "helicoidal (r, theta)";
  return j.dump(2);
}

double minimality_residual(double r, double theta, double a, double dphi, double ddphi) {
  if (!(r > 0.0)) throw DomainError("radial parameter must be > 0");
  return paper_mean_numerator_m3(r, theta, a, dphi, ddphi);
}

double minimality_phi2_coefficient(double r, double theta, double a) {
  const double r2 = r * r, r4 = r2 * r2;
  return 2 * r2 * r * (r4 - 1) * (r4 * r4 + 2 * r4 * r2 * std::cos(6 * theta) + r4 + a * a);
}

std::vector<SlicePoint> solve_slice_ode(double theta, double a, double r0, double dphi0,
                                        double r1, double tol) {
  if (!(r0 > 0.0) || !(r1 > 0.0)) throw DomainError("slice endpoints must be > 0");
  if ((r0 - 1.0) * (r1 - 1.0) <= 0.0)
    throw SingularCoefficient("slice path touches r = 1 where the phi'' coefficient vanishes");

  auto second_derivative = [theta, a](double r, double dphi) {
    const double coef = minimality_phi2_coefficient(r, theta, a);
    if (std::abs(coef) < 1e-10)
      throw SingularCoefficient("phi'' coefficient " + detail::fmt_short(coef) + " at r = " +
                                detail::fmt_short(r));
    return -minimality_residual(r, theta, a, dphi, 0.0) / coef;
  };

  const OdeRhs rhs = [&](double r, const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(1);
    dy[0] = second_derivative(r, y[0]);
    return dy;
  };

  std::vector<SlicePoint> out;
  OdeOptions opts;
  opts.tol = tol;
  Eigen::VectorXd y0(1);
  y0[0] = dphi0;
  integrate_rkf45(rhs, r0, y0, r1, opts, [&](const OdeStep& s) {
    SlicePoint p;
    p.r = s.t;
    p.dphi = s.y[0];
    p.ddphi = second_derivative(p.r, p.dphi);
    p.residual = minimality_residual(p.r, theta, a, p.dphi, p.ddphi);
    if (!(std::abs(p.residual) < tol))
      throw ToleranceNotMet("minimality residual " + detail::fmt_short(p.residual) +
                            " at r = " + detail::fmt_short(p.r) + " exceeds tol");
    out.push_back(p);
  });
  return out;
}

}  // namespace helicoid
