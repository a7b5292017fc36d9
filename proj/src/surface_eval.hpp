#pragma once

// Point evaluation generic over the scalar type. The double instantiation
// backs eval(); the finite-difference oracle in diffgeo instantiates it in
// long double so that its stencils are not swamped by rounding.

#include "helicoid/surfaces.hpp"

#include <cmath>

namespace helicoid::detail {

template <class T>
using Vec3T = Eigen::Matrix<T, 3, 1>;

// (x, y) shadow shared by the helicoidal, rotational and Bour families.
template <class T>
Vec3T<T> value_m_shadow(double m_in, T r, T t) {
  using std::cos;
  using std::pow;
  using std::sin;
  const T m = static_cast<T>(m_in);
  const T lo = m - 1;
  const T hi = m + 1;
  const T a_lo = pow(r, lo) / lo;
  const T a_hi = pow(r, hi) / hi;
  return Vec3T<T>(a_lo * cos(lo * t) - a_hi * cos(hi * t),
                  -a_lo * sin(lo * t) - a_hi * sin(hi * t), T(0));
}

template <class T>
Vec3T<T> evaluate(const SurfaceSpec& s, T r, T t) {
  using std::cos;
  using std::pow;
  using std::sin;
  const T a = static_cast<T>(s.a);
  switch (s.family) {
    case Family::helicoidal: {
      Vec3T<T> p = value_m_shadow<T>(s.m, r, t);
      p.z() = s.profile.value_as<T>(r) + a * t;
      return p;
    }
    case Family::rotational: {
      Vec3T<T> p = value_m_shadow<T>(s.m, r, t);
      p.z() = s.profile.value_as<T>(r);
      return p;
    }
    case Family::bour_minimal: {
      const T m = static_cast<T>(s.m);
      Vec3T<T> p = value_m_shadow<T>(s.m, r, t);
      p.z() = T(2) / m * pow(r, m) * cos(m * t) + a * t;
      return p;
    }
    case Family::classical_helicoid:
      return Vec3T<T>(r * cos(t), r * sin(t), s.profile.value_as<T>(r) + a * t);
  }
  return Vec3T<T>::Zero();
}

}  // namespace helicoid::detail
