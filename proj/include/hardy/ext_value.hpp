#pragma once

#include <cmath>
#include <limits>

namespace hardy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A non-negative real or +inf, with an error estimate for finite values.
struct ExtValue {
  double value = 0.0;
  double error_estimate = 0.0;

  static ExtValue infinite() { return {kInf, 0.0}; }
  static ExtValue exact(double v) { return {v, 0.0}; }

  bool is_infinite() const { return std::isinf(value); }
  bool is_finite() const { return std::isfinite(value); }
};

}  // namespace hardy
