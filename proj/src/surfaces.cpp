#include "helicoid/surfaces.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <string>

#include "format.hpp"
#include "helicoid/errors.hpp"
#include "surface_eval.hpp"

namespace helicoid {

namespace {

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("radial parameter must be finite and > 0, got " + detail::fmt_short(r));
}

void check_value_m(double m) {
  if (!std::isfinite(m)) throw DomainError("value m must be finite");
  if (std::abs(m - 1.0) <= kValueGuard || std::abs(m + 1.0) <= kValueGuard)
    throw DomainError("value m must avoid +-1, got " + detail::fmt_short(m));
}

double parse_number(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw DomainError("malformed number '" + s + "' in profile");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// Analytic partials of the (x, y) shadow common to the value-m families.
Jet2 value_m_shadow_jet(double m, double r, double t) {
  const double lo = m - 1.0;
  const double hi = m + 1.0;
  const double clo = std::cos(lo * t), slo = std::sin(lo * t);
  const double chi = std::cos(hi * t), shi = std::sin(hi * t);
  const double rlo = std::pow(r, lo), rhi = std::pow(r, hi);
  const double rlo1 = rlo / r, rhi1 = rhi / r;
  const double rlo2 = rlo1 / r, rhi2 = rhi1 / r;

  Jet2 j;
  j.p_r = Vec3(rlo1 * clo - rhi1 * chi, -rlo1 * slo - rhi1 * shi, 0.0);
  j.p_t = Vec3(-rlo * slo + rhi * shi, -rlo * clo - rhi * chi, 0.0);
  j.p_rr = Vec3((lo - 1.0) * rlo2 * clo - (hi - 1.0) * rhi2 * chi,
                -(lo - 1.0) * rlo2 * slo - (hi - 1.0) * rhi2 * shi, 0.0);
  j.p_rt = Vec3(-lo * rlo1 * slo + hi * rhi1 * shi, -lo * rlo1 * clo - hi * rhi1 * chi, 0.0);
  j.p_tt = Vec3(-lo * rlo * clo + hi * rhi * chi, lo * rlo * slo + hi * rhi * shi, 0.0);
  return j;
}

}  // namespace

// --- Profile ---------------------------------------------------------------

Profile Profile::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  for (double c : coefficients)
    if (!std::isfinite(c)) throw DomainError("profile coefficients must be finite");
  return Profile(Kind::polynomial, std::move(coefficients));
}

Profile Profile::power_term(double c, double p) {
  if (!std::isfinite(c) || !std::isfinite(p))
    throw DomainError("power-term profile parameters must be finite");
  return Profile(Kind::power_term, {c, p});
}

Profile Profile::constant(double c) {
  if (!std::isfinite(c)) throw DomainError("constant profile must be finite");
  return Profile(Kind::constant, {c});
}

Profile Profile::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw DomainError("profile must look like poly:c0,c1,... or power:c,p, got '" +
                      std::string(text) + "'");
  const auto head = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (head == "poly") return polynomial(parse_list(body));
  if (head == "power") {
    const auto v = parse_list(body);
    if (v.size() != 2) throw DomainError("power profile takes exactly c,p");
    return power_term(v[0], v[1]);
  }
  if (head == "const") return constant(parse_number(body));
  throw DomainError("unknown profile kind '" + std::string(head) + "'");
}

double Profile::d1(double r) const {
  switch (kind_) {
    case Kind::polynomial: {
      double acc = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * r + double(k) * coeffs_[k];
      return acc;
    }
    case Kind::power_term:
      return coeffs_[0] * coeffs_[1] * std::pow(r, coeffs_[1] - 1.0);
    case Kind::constant:
      return 0.0;
  }
  return 0.0;
}

double Profile::d2(double r) const {
  switch (kind_) {
    case Kind::polynomial: {
      double acc = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 2;)
        acc = acc * r + double(k) * double(k - 1) * coeffs_[k];
      return acc;
    }
    case Kind::power_term:
      return coeffs_[0] * coeffs_[1] * (coeffs_[1] - 1.0) * std::pow(r, coeffs_[1] - 2.0);
    case Kind::constant:
      return 0.0;
  }
  return 0.0;
}

std::string Profile::id() const {
  std::string out;
  switch (kind_) {
    case Kind::polynomial: out = "poly:"; break;
    case Kind::power_term: out = "power:"; break;
    case Kind::constant: out = "const:"; break;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += detail::fmt_short(coeffs_[i]);
  }
  return out;
}

// --- SurfaceSpec -----------------------------------------------------------

std::string_view to_string(Family f) {
  switch (f) {
    case Family::helicoidal: return "helicoidal";
    case Family::rotational: return "rotational";
    case Family::bour_minimal: return "bour-minimal";
    case Family::classical_helicoid: return "classical";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  if (name == "helicoidal" || name == "helicoidal-m") return Family::helicoidal;
  if (name == "rotational" || name == "rotational-m") return Family::rotational;
  if (name == "bour-minimal" || name == "bour-minimal-m" || name == "bour")
    return Family::bour_minimal;
  if (name == "classical" || name == "classical-helicoid") return Family::classical_helicoid;
  throw DomainError("unknown surface family '" + std::string(name) + "'");
}

SurfaceSpec SurfaceSpec::helicoidal(double m, double a, Profile profile) {
  SurfaceSpec s{Family::helicoidal, m, a, std::move(profile)};
  s.validate();
  return s;
}

SurfaceSpec SurfaceSpec::rotational(double m, Profile profile) {
  SurfaceSpec s{Family::rotational, m, 0.0, std::move(profile)};
  s.validate();
  return s;
}

SurfaceSpec SurfaceSpec::bour_minimal(double m, double a) {
  SurfaceSpec s{Family::bour_minimal, m, a, Profile::constant(0.0)};
  s.validate();
  return s;
}

SurfaceSpec SurfaceSpec::classical_helicoid(double a, Profile profile) {
  SurfaceSpec s{Family::classical_helicoid, 0.0, a, std::move(profile)};
  s.validate();
  return s;
}

void SurfaceSpec::validate() const {
  if (!std::isfinite(a) || a < 0.0) throw DomainError("pitch a must be finite and >= 0");
  switch (family) {
    case Family::helicoidal:
    case Family::rotational:
      check_value_m(m);
      break;
    case Family::bour_minimal:
      check_value_m(m);
      if (std::abs(m) <= kValueGuard) throw DomainError("Bour minimal surface requires m != 0");
      break;
    case Family::classical_helicoid:
      break;
  }
}

// --- evaluation ------------------------------------------------------------

Vec3 eval(const SurfaceSpec& spec, double r, double theta) {
  spec.validate();
  check_radius(r);
  return detail::evaluate<double>(spec, r, theta);
}

Vec3 eval_helicoidal(const SurfaceSpec& spec, double r, double theta) {
  if (spec.family != Family::helicoidal)
    throw DomainError("eval_helicoidal needs a helicoidal spec");
  return eval(spec, r, theta);
}

Vec3 compose_definition(const SurfaceSpec& spec, double r, double theta) {
  if (spec.family != Family::helicoidal)
    throw DomainError("compose_definition needs a helicoidal spec");
  spec.validate();
  check_radius(r);

  const double m = spec.m;
  const double lo = m - 1.0, hi = m + 1.0;
  const Vec3 axis(0.0, 0.0, 1.0);
  const double half_phi = 0.5 * spec.profile.value(r);

  Eigen::Matrix3d rot1;
  rot1 << std::cos(lo * theta), std::sin(lo * theta), 0.0,
         -std::sin(lo * theta), std::cos(lo * theta), 0.0,
          0.0, 0.0, 1.0;
  Eigen::Matrix3d rot2;
  rot2 << std::cos(hi * theta), -std::sin(hi * theta), 0.0,
          std::sin(hi * theta),  std::cos(hi * theta), 0.0,
          0.0, 0.0, 1.0;
  const Vec3 gamma1(std::pow(r, lo) / lo, 0.0, half_phi);
  const Vec3 gamma2(-std::pow(r, hi) / hi, 0.0, half_phi);

  const Vec3 block1 = rot1 * gamma1 + 0.5 * spec.a * theta * axis;
  const Vec3 block2 = rot2 * gamma2 + 0.5 * spec.a * theta * axis;
  return block1 + block2;
}

Vec3 eval_rotational(const SurfaceSpec& spec, double r_R, double theta_R, double phi_R_value) {
  check_value_m(spec.m);
  check_radius(r_R);
  Vec3 p = detail::value_m_shadow<double>(spec.m, r_R, theta_R);
  p.z() = phi_R_value;
  return p;
}

Vec3 eval_bour_minimal(double m, double r, double theta) {
  return eval(SurfaceSpec::bour_minimal(m), r, theta);
}

Vec3 eval_classical_helicoid(double a, const Profile& profile, double r, double theta) {
  return eval(SurfaceSpec::classical_helicoid(a, profile), r, theta);
}

Jet2 jet(const SurfaceSpec& spec, double r, double theta) {
  spec.validate();
  check_radius(r);
  const double a = spec.a;

  switch (spec.family) {
    case Family::helicoidal:
    case Family::rotational: {
      const double pitch = spec.family == Family::helicoidal ? a : 0.0;
      Jet2 j = value_m_shadow_jet(spec.m, r, theta);
      j.p_r.z() = spec.profile.d1(r);
      j.p_t.z() = pitch;
      j.p_rr.z() = spec.profile.d2(r);
      j.p = detail::evaluate<double>(spec, r, theta);
      return j;
    }
    case Family::bour_minimal: {
      const double m = spec.m;
      const double c = std::cos(m * theta), s = std::sin(m * theta);
      const double rm = std::pow(r, m);
      Jet2 j = value_m_shadow_jet(m, r, theta);
      j.p_r.z() = 2.0 * rm / r * c;
      j.p_t.z() = -2.0 * rm * s + a;
      j.p_rr.z() = 2.0 * (m - 1.0) * rm / (r * r) * c;
      j.p_rt.z() = -2.0 * m * rm / r * s;
      j.p_tt.z() = -2.0 * m * rm * c;
      j.p = detail::evaluate<double>(spec, r, theta);
      return j;
    }
    case Family::classical_helicoid: {
      const double c = std::cos(theta), s = std::sin(theta);
      Jet2 j;
      j.p_r = Vec3(c, s, spec.profile.d1(r));
      j.p_t = Vec3(-r * s, r * c, a);
      j.p_rr = Vec3(0.0, 0.0, spec.profile.d2(r));
      j.p_rt = Vec3(-s, c, 0.0);
      j.p_tt = Vec3(-r * c, -r * s, 0.0);
      j.p = detail::evaluate<double>(spec, r, theta);
      return j;
    }
  }
  return {};
}

}  // namespace helicoid
