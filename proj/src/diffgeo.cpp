#include "helicoid/diffgeo.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <string>

#include "format.hpp"
#include "helicoid/errors.hpp"
#include "surface_eval.hpp"

namespace helicoid {

FirstForm first_form_closed(double m, double a, const Profile& profile, double r, double theta) {
  // Validates m, a and r exactly like the surface evaluators.
  SurfaceSpec::helicoidal(m, a, profile);
  if (!(r > 0.0)) throw DomainError("radial parameter must be > 0");

  const double c = std::cos(2.0 * m * theta);
  const double s = std::sin(2.0 * m * theta);
  const double dphi = profile.d1(r);
  const double r2 = r * r;

  FirstForm f;
  f.E = std::pow(r, 2.0 * m - 4.0) * (r2 * r2 - 2.0 * r2 * c + 1.0) + dphi * dphi;
  f.F = 2.0 * std::pow(r, 2.0 * m - 1.0) * s + a * dphi;
  f.G = std::pow(r, 2.0 * m - 2.0) * (r2 * r2 + 2.0 * r2 * c + 1.0) + a * a;
  return f;
}

FirstForm first_form_from_jet(const Jet2& j) {
  return {j.p_r.dot(j.p_r), j.p_r.dot(j.p_t), j.p_t.dot(j.p_t)};
}

Vec3 gauss_map(const Jet2& j) {
  const Vec3 n = j.p_r.cross(j.p_t);
  const double len = n.norm();
  if (!(len > kDegenerateThreshold))
    throw DegenerateMetric("|p_r x p_theta| = " + detail::fmt_short(len) +
                           " is at or below the degeneracy threshold");
  return n / len;
}

SecondForm second_form(const Jet2& j) {
  const Vec3 e = gauss_map(j);
  return {e.dot(j.p_rr), e.dot(j.p_rt), e.dot(j.p_tt)};
}

FundamentalForms fundamental_forms(const Jet2& j) {
  const FirstForm I = first_form_from_jet(j);
  FundamentalForms f;
  f.E = I.E;
  f.F = I.F;
  f.G = I.G;
  f.detI = I.det();
  f.normal = gauss_map(j);
  f.L = f.normal.dot(j.p_rr);
  f.M = f.normal.dot(j.p_rt);
  f.N = f.normal.dot(j.p_tt);
  return f;
}

Curvatures curvatures(const FundamentalForms& f) {
  if (!(f.detI > kDegenerateThreshold))
    throw DegenerateMetric("det I = " + detail::fmt_short(f.detI) +
                           " is at or below the degeneracy threshold");
  return {(f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * f.detI),
          (f.L * f.N - f.M * f.M) / f.detI};
}

CurvatureSample curvature_sample(const SurfaceSpec& spec, double r, double theta,
                                 JetSource source, double h) {
  const Jet2 j = source == JetSource::analytic ? jet(spec, r, theta) : fd_jet(spec, r, theta, h);
  CurvatureSample out;
  out.r = r;
  out.theta = theta;
  out.forms = fundamental_forms(j);
  const Curvatures c = curvatures(out.forms);
  out.H = c.H;
  out.K = c.K;
  return out;
}

Jet2 fd_jet(const SurfaceSpec& spec, double r, double theta, double h) {
  spec.validate();
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("finite-difference step must be > 0");
  if (!(r - 2.0 * h > 0.0))
    throw DomainError("finite-difference stencil at r = " + detail::fmt_short(r) +
                      " with h = " + detail::fmt_short(h) + " leaves r > 0");

  using LD = long double;
  const LD rl = r, tl = theta, hl = h;
  auto f = [&](int dr, int dt) { return detail::evaluate<LD>(spec, rl + dr * hl, tl + dt * hl); };
  auto out = [](const detail::Vec3T<LD>& v) { return v.cast<double>(); };

  const auto c = f(0, 0);
  const auto rp1 = f(1, 0), rm1 = f(-1, 0), rp2 = f(2, 0), rm2 = f(-2, 0);
  const auto tp1 = f(0, 1), tm1 = f(0, -1), tp2 = f(0, 2), tm2 = f(0, -2);

  Jet2 j;
  j.p = out(c);
  j.p_r = out((rp1 - rm1) / (2 * hl));
  j.p_t = out((tp1 - tm1) / (2 * hl));
  j.p_rr = out((-rp2 + 16 * rp1 - 30 * c + 16 * rm1 - rm2) / (12 * hl * hl));
  j.p_tt = out((-tp2 + 16 * tp1 - 30 * c + 16 * tm1 - tm2) / (12 * hl * hl));
  j.p_rt = out((f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4 * hl * hl));
  return j;
}

}  // namespace helicoid
