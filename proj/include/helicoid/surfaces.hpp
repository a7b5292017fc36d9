#pragma once

// Surface families: helicoidal surfaces of value m, their rotational
// counterparts, Bour's minimal surfaces and the classical screw surface.
// Axis is fixed to (0,0,1); every evaluation takes the radial parameter
// r > 0 and the angle theta.

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace helicoid {

using Vec3 = Eigen::Vector3d;

/// Generating function phi(r) of the profile curve. Only closed-form
/// families are supported so that phi' and phi'' are exact.
class Profile {
 public:
  enum class Kind { polynomial, power_term, constant };

  Profile() : Profile(constant(0.0)) {}

  /// phi(r) = c0 + c1 r + c2 r^2 + ...
  static Profile polynomial(std::vector<double> coefficients);
  /// phi(r) = c r^p (principal real power, r > 0).
  static Profile power_term(double c, double p);
  static Profile constant(double c);

  /// Accepts "poly:c0,c1,...", "power:c,p" and "const:c".
  static Profile parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  double value(double r) const { return value_as<double>(r); }
  double d1(double r) const;
  double d2(double r) const;

  template <class T>
  T value_as(T r) const {
    switch (kind_) {
      case Kind::polynomial: {
        T acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
          acc = acc * r + static_cast<T>(*it);
        return acc;
      }
      case Kind::power_term: {
        using std::pow;
        return static_cast<T>(coeffs_[0]) * pow(r, static_cast<T>(coeffs_[1]));
      }
      case Kind::constant:
        return static_cast<T>(coeffs_[0]);
    }
    return T(0);
  }

  /// Canonical textual form; parse(id()) reproduces the profile.
  std::string id() const;

 private:
  Profile(Kind kind, std::vector<double> coeffs) : kind_(kind), coeffs_(std::move(coeffs)) {}

  Kind kind_;
  // polynomial: c0..ck; power_term: {c, p}; constant: {c}.
  std::vector<double> coeffs_;
};

enum class Family { helicoidal, rotational, bour_minimal, classical_helicoid };

std::string_view to_string(Family f);
Family family_from_string(std::string_view name);

/// Family tag plus parameters. The constructors validate; a SurfaceSpec
/// that exists is always evaluable for r > 0.
///
/// For the rotational family the pitch is forced to 0. The Bour family
/// carries its own height (2/m) r^m cos(m theta); a non-zero pitch adds
/// a*theta on top (a = 0 is Bour's minimal surface).
struct SurfaceSpec {
  Family family = Family::helicoidal;
  double m = 3.0;
  double a = 0.0;
  Profile profile;

  static SurfaceSpec helicoidal(double m, double a, Profile profile);
  static SurfaceSpec rotational(double m, Profile profile);
  static SurfaceSpec bour_minimal(double m, double a = 0.0);
  static SurfaceSpec classical_helicoid(double a, Profile profile);

  /// Throws DomainError when the parameters leave the family's domain.
  void validate() const;
};

/// Point plus first and second partials in (r, theta).
struct Jet2 {
  Vec3 p = Vec3::Zero();
  Vec3 p_r = Vec3::Zero();
  Vec3 p_t = Vec3::Zero();
  Vec3 p_rr = Vec3::Zero();
  Vec3 p_rt = Vec3::Zero();
  Vec3 p_tt = Vec3::Zero();
};

/// Band around m = +-1 (and m = 0 for Bour) treated as out of domain.
inline constexpr double kValueGuard = 1e-9;

/// Evaluates whichever family `spec` names.
Vec3 eval(const SurfaceSpec& spec, double r, double theta);

/// Reduced two-term parametrization of the helicoidal surface of value m.
Vec3 eval_helicoidal(const SurfaceSpec& spec, double r, double theta);

/// Builds the same point from the two rotated profile-curve blocks, each
/// carrying half of the pitch displacement.
Vec3 compose_definition(const SurfaceSpec& spec, double r, double theta);

/// Rotational surface of value m with caller-supplied height phi_R(r_R).
Vec3 eval_rotational(const SurfaceSpec& spec, double r_R, double theta_R, double phi_R_value);

/// Bour's minimal surface B_m: a = 0 with height (2/m) r^m cos(m theta).
Vec3 eval_bour_minimal(double m, double r, double theta);

/// (r cos theta, r sin theta, phi(r) + a theta).
Vec3 eval_classical_helicoid(double a, const Profile& profile, double r, double theta);

/// Closed-form partials up to second order; jet(...).p == eval(...).
Jet2 jet(const SurfaceSpec& spec, double r, double theta);

}  // namespace helicoid
