#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace refl {

inline constexpr double kPi = std::numbers::pi;

/// Numerical thresholds shared by every module.
struct Tolerances {
  double geo = 1e-9;  ///< incidence and side predicates
  double ang = 1e-7;  ///< angle == k*pi/m matching
  double sig = 1e-9;  ///< eigenvalue zero threshold for signatures
  double id = 1e-6;   ///< identity grid for group-element keys
};

enum class ErrorCode {
  InputError,
  GeometryError,
  NonDiscretePair,
  BoundExceeded,
  IndexBoundExceeded,
  Unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Error input_error(const std::string& what) { return {ErrorCode::InputError, what}; }
inline Error geometry_error(const std::string& what) { return {ErrorCode::GeometryError, what}; }

}  // namespace refl
