#pragma once

#include <functional>

#include "hardy/ext_value.hpp"

namespace hardy {

/// Tolerances shared by every numerical integral and refinement loop.
struct Quadrature {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panels = 4000;
  double divergence_threshold = 1e12;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (7/15) on [lo, hi] for an integrand that is smooth
/// on the closed interval.
QuadResult gauss_kronrod(const std::function<double(double)>& f, double lo,
                         double hi, double rel_tol, double abs_tol,
                         int max_panels);

/// Integral of g(d) for d in (0, half], where g may be singular at d = 0.
/// Panels (half 2^-(k+1), half 2^-k] are integrated one by one; the tail
/// below the last panel is extrapolated geometrically. Returns +inf when the
/// panel contributions stop shrinking (ratio >= 1 for three consecutive
/// panels) or the running sum exceeds quad.divergence_threshold.
/// `min_d` is the smallest representable offset from the singular end.
ExtValue integrate_toward_end(const std::function<double(double)>& g,
                              double half, double min_d,
                              const Quadrature& quad);

}  // namespace hardy
