#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/ext_value.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

/// The interval (a, b) with 0 <= a < b <= +inf.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  Interval() = default;
  Interval(double lo, double hi);

  bool unbounded() const { return std::isinf(b); }
  bool operator==(const Interval&) const = default;
};

/// A point of [a, b] carried together with its distance to the right end.
/// Near b the gap is the authoritative coordinate; x alone cannot resolve
/// distances below one ulp of b.
struct Abscissa {
  double x = 0.0;
  double gap = kInf;
};

Abscissa at(const Interval& dom, double x);
Abscissa at_gap(const Interval& dom, double gap);
inline Abscissa left_end(const Interval& dom) { return at(dom, dom.a); }
inline Abscissa right_end(const Interval& dom) { return {dom.b, 0.0}; }

/// hi - lo, computed from gaps when both points sit in the upper part.
double width(const Abscissa& lo, const Abscissa& hi);
Abscissa shift_right(const Abscissa& p, double d);
Abscissa shift_left(const Abscissa& p, double d);
/// Point at fraction theta of [lo, hi], measured from the nearer end.
Abscissa lerp(const Abscissa& lo, const Abscissa& hi, double theta);
/// Strict "lo lies before hi".
bool before(const Abscissa& lo, const Abscissa& hi);

/// c * t^alpha * (b - t)^beta; beta must be 0 when b = inf.
struct PowerKind {
  double c = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// c * exp(alpha * t).
struct ExpKind {
  double c = 1.0;
  double alpha = 0.0;
};

class Weight;

/// Contiguous pieces; (b - t) inside a power piece refers to that piece's
/// own right end.
struct PiecewiseKind {
  std::vector<Weight> pieces;
};

/// Grid values, interpolated linearly in log(value).
struct TableKind {
  std::vector<double> t;
  std::vector<double> v;
};

class Weight {
 public:
  using Kind = std::variant<PowerKind, ExpKind, PiecewiseKind, TableKind>;

  static Weight power(Interval dom, double c, double alpha, double beta = 0.0);
  static Weight exponential(Interval dom, double c, double alpha);
  static Weight constant(Interval dom, double c) { return power(dom, c, 0.0); }
  static Weight piecewise(std::vector<Weight> pieces);
  static Weight table(const std::vector<std::pair<double, double>>& points);

  const Interval& domain() const { return domain_; }
  const Kind& kind() const { return kind_; }

  bool is_constant() const;
  /// Breakpoints strictly inside the domain (piece joins and table nodes).
  std::vector<double> breakpoints() const;

 private:
  Weight(Interval dom, Kind k) : domain_(dom), kind_(std::move(k)) {}

  Interval domain_;
  Kind kind_;
};

/// w(x) for x strictly inside the domain.
double eval(const Weight& w, double x);
/// w at a point of the closed domain (continuous extension at the ends).
double value_at(const Weight& w, const Abscissa& p);
/// lim_{t -> p+} w(t) and lim_{t -> p-} w(t).
double right_limit(const Weight& w, const Abscissa& p);
double left_limit(const Weight& w, const Abscissa& p);

/// Integral of w over (lo, hi). Closed form for every symbolic kind where an
/// antiderivative is available, adaptive quadrature otherwise.
ExtValue integrate(const Weight& w, const Abscissa& lo, const Abscissa& hi,
                   const Quadrature& quad = {});
ExtValue integrate(const Weight& w, double x, double y,
                   const Quadrature& quad = {});
/// Same integral, always through adaptive panel quadrature.
ExtValue integrate_adaptive(const Weight& w, const Abscissa& lo,
                            const Abscissa& hi, const Quadrature& quad = {});

/// W(x) = integral of w over (x, b).
ExtValue tail_W(const Weight& w, const Abscissa& x, const Quadrature& quad = {});
ExtValue tail_W(const Weight& w, double x, const Quadrature& quad = {});

/// ess sup of w over the open interval (lo, hi): exact for symbolic kinds.
double ess_sup(const Weight& w, const Abscissa& lo, const Abscissa& hi);
/// ess sup approximated by grid maxima under dyadic refinement.
ExtValue ess_sup_grid(const Weight& w, const Abscissa& lo, const Abscissa& hi,
                      const Quadrature& quad = {});

/// V_r(x, y): (int_x^y v^{1/(1-r)})^{(1-r)/r} for r < 1, ess sup for r = 1.
ExtValue v_r(const Weight& v, double r, const Abscissa& x, const Abscissa& y,
             const Quadrature& quad = {});
ExtValue v_r(const Weight& v, double r, double x, double y,
             const Quadrature& quad = {});
/// V_r(x, y+).
ExtValue v_r_right_limit(const Weight& v, double r, const Abscissa& x,
                         const Abscissa& y, const Quadrature& quad = {});
ExtValue v_r_right_limit(const Weight& v, double r, double x, double y,
                         const Quadrature& quad = {});

Weight pow(const Weight& w, double e);
Weight scale(const Weight& w, double lambda);
/// Pointwise product; throws DomainError when the result has no
/// representation among the supported kinds.
Weight product(const Weight& w1, const Weight& w2);

}  // namespace hardy
