#pragma once

#include <stdexcept>
#include <string>

namespace helicoid {

enum class ErrorCode {
  domain,
  degenerate_metric,
  division_by_zero,
  tolerance_not_met,
  singular_coefficient,
  io,
};

/// Base of every error raised by the library. The code is what the C API
/// reports; the message is kept for hlc_last_error().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

struct DegenerateMetric : Error {
  explicit DegenerateMetric(const std::string& what)
      : Error(ErrorCode::degenerate_metric, what) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& what)
      : Error(ErrorCode::division_by_zero, what) {}
};

struct ToleranceNotMet : Error {
  explicit ToleranceNotMet(const std::string& what)
      : Error(ErrorCode::tolerance_not_met, what) {}
};

struct SingularCoefficient : Error {
  explicit SingularCoefficient(const std::string& what)
      : Error(ErrorCode::singular_coefficient, what) {}
};

struct IOError : Error {
  explicit IOError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace helicoid
