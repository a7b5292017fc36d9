#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace helicoid::detail {

// 17 significant digits: enough to round-trip any double bit-for-bit.
inline std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest representation that still round-trips; used for identifiers.
inline std::string fmt_short(double v) {
  if (!std::isfinite(v)) return fmt17(v);
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace helicoid::detail
