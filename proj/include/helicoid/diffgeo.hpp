#pragma once

// Fundamental forms, Gauss map and curvatures computed from surface jets,
// plus a finite-difference jet used as an independent oracle.

#include "helicoid/surfaces.hpp"

namespace helicoid {

/// Below this, det I (or |p_r x p_theta|) is treated as a branch point.
inline constexpr double kDegenerateThreshold = 1e-12;

/// Default step of the finite-difference oracle.
inline constexpr double kDefaultFdStep = 1e-5;

struct FirstForm {
  double E = 0, F = 0, G = 0;
  double det() const { return E * G - F * F; }
};

struct SecondForm {
  double L = 0, M = 0, N = 0;
};

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double L = 0, M = 0, N = 0;
  double detI = 0;
  /// (p_r x p_theta) / |p_r x p_theta|
  Vec3 normal = Vec3::Zero();
};

struct Curvatures {
  double H = 0;
  double K = 0;
};

struct CurvatureSample {
  double H = 0, K = 0;
  FundamentalForms forms;
  double r = 0, theta = 0;
};

enum class JetSource { analytic, finite_difference };

/// E, F, G of the helicoidal surface of value m in closed form.
FirstForm first_form_closed(double m, double a, const Profile& profile, double r, double theta);

/// E = p_r.p_r, F = p_r.p_theta, G = p_theta.p_theta
FirstForm first_form_from_jet(const Jet2& j);

/// Unit normal; throws DegenerateMetric when |p_r x p_theta| <= 1e-12.
Vec3 gauss_map(const Jet2& j);

/// Normal projections of the second partials.
SecondForm second_form(const Jet2& j);

FundamentalForms fundamental_forms(const Jet2& j);

/// H = (EN - 2FM + GL) / (2 det I), K = (LN - M^2) / det I.
Curvatures curvatures(const FundamentalForms& f);

/// Convenience: jet (analytic or finite-difference), forms and curvatures.
CurvatureSample curvature_sample(const SurfaceSpec& spec, double r, double theta,
                                 JetSource source = JetSource::analytic,
                                 double h = kDefaultFdStep);

/// Central differences of eval(): 2-point first partials, 5-point pure
/// second partials, 4-point mixed partial. Evaluated in long double.
/// Requires r - 2h > 0.
Jet2 fd_jet(const SurfaceSpec& spec, double r, double theta, double h = kDefaultFdStep);

}  // namespace helicoid
