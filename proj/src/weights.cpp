#include "hardy/weights.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace hardy {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ExtValue closed(double v) {
  if (std::isnan(v)) throw QuadratureError("closed form produced NaN");
  if (std::isinf(v)) return ExtValue::infinite();
  return {v, 8.0 * kEps * std::abs(v)};
}

// Re-express a point of the parent domain in a piece's own coordinates.
Abscissa localize(const Abscissa& p, const Interval& piece) {
  if (std::isinf(piece.b)) return {p.x, kInf};
  if (std::isfinite(p.gap) && p.x + p.gap == piece.b) return p;
  if (std::isfinite(p.gap) && std::abs(p.x + p.gap - piece.b) <= 4 * kEps * piece.b)
    return {p.x, p.gap};
  return {p.x, piece.b - p.x};
}

// (x + w)^e - x^e for w >= 0, accurate when w << x.
double pow_diff(double x, double w, double e) {
  if (x == 0.0) return std::pow(w, e);
  return std::pow(x, e) * std::expm1(e * std::log1p(w / x));
}

// Integral of c s^e over (s0, s0 + w).
double power_segment(double c, double e, double s0, double w) {
  if (w <= 0.0) return 0.0;
  if (std::isinf(w)) {
    if (e >= -1.0 || s0 == 0.0) return kInf;
    return -c * std::pow(s0, e + 1.0) / (e + 1.0);
  }
  if (s0 == 0.0 && e <= -1.0) return kInf;
  if (e == -1.0) return c * std::log1p(w / s0);
  return c * pow_diff(s0, w, e + 1.0) / (e + 1.0);
}

double eval_power(const PowerKind& k, const Abscissa& p) {
  double v = k.c;
  if (k.alpha != 0.0) v *= std::pow(p.x, k.alpha);
  if (k.beta != 0.0) v *= std::pow(p.gap, k.beta);
  return v;
}

double eval_exp(const ExpKind& k, double x) {
  if (k.alpha == 0.0) return k.c;
  return k.c * std::exp(k.alpha * x);
}

// Log-linear segment i of a table: value at t = v_i exp(s (t - t_i)).
double table_slope(const TableKind& k, std::size_t i) {
  return std::log(k.v[i + 1] / k.v[i]) / (k.t[i + 1] - k.t[i]);
}

double eval_table(const TableKind& k, double x) {
  auto it = std::upper_bound(k.t.begin(), k.t.end(), x);
  std::size_t i = static_cast<std::size_t>(it - k.t.begin());
  if (i == 0) return k.v.front();
  if (i >= k.t.size()) return k.v.back();
  --i;
  return k.v[i] * std::exp(table_slope(k, i) * (x - k.t[i]));
}

// Integral of v0 exp(s (t - t0)) over (t0 + d0, t0 + d1).
double exp_segment(double v0, double s, double d0, double d1) {
  const double w = d1 - d0;
  if (w <= 0.0) return 0.0;
  if (std::isinf(d1)) {
    if (s >= 0.0) return kInf;
    return -v0 * std::exp(s * d0) / s;
  }
  if (s == 0.0) return v0 * w;
  return v0 * std::exp(s * d0) * std::expm1(s * w) / s;
}

void check_inside(const Weight& w, const Abscissa& lo, const Abscissa& hi) {
  const Interval& d = w.domain();
  if (lo.x < d.a || hi.x > d.b || std::isnan(lo.x) || std::isnan(hi.x)) {
    throw DomainError("integration range (" + fmt(lo.x) + ", " + fmt(hi.x) +
                      ") outside weight domain (" + fmt(d.a) + ", " +
                      fmt(d.b) + ")");
  }
}

ExtValue integrate_power(const Weight& w, const PowerKind& k,
                         const Abscissa& lo, const Abscissa& hi,
                         const Quadrature& quad) {
  const double b = w.domain().b;
  const double len = width(lo, hi);
  if (len <= 0.0) return ExtValue::exact(0.0);
  if (k.beta == 0.0) {
    return closed(power_segment(k.c, k.alpha, lo.x, len));
  }
  if (k.alpha == 0.0) {
    // s = b - t runs over (hi.gap, lo.gap).
    return closed(power_segment(k.c, k.beta, hi.gap, len));
  }
  const bool touches_zero = lo.x == 0.0;
  const bool touches_b = hi.gap == 0.0;
  if (touches_zero && k.alpha <= -1.0) return ExtValue::infinite();
  if (touches_b && k.beta <= -1.0) return ExtValue::infinite();
  const double margin = std::min(lo.x, hi.gap);
  const double a1 = k.alpha + 1.0, b1 = k.beta + 1.0;
  // The incomplete beta function loses everything to cancellation as an
  // exponent approaches -1.
  if (a1 < 0.05 || b1 < 0.05 || len < 0.5 * margin) {
    return integrate_adaptive(w, lo, hi, quad);
  }
  const double scale = k.c * std::pow(b, a1 + k.beta);
  double v;
  if (lo.x >= 0.5 * b) {
    v = boost::math::beta(b1, a1, lo.gap / b) -
        boost::math::beta(b1, a1, hi.gap / b);
  } else {
    v = boost::math::beta(a1, b1, std::min(1.0, hi.x / b)) -
        boost::math::beta(a1, b1, lo.x / b);
  }
  ExtValue out = closed(scale * v);
  out.error_estimate = 64.0 * kEps * std::abs(out.value);
  return out;
}

ExtValue integrate_exp(const ExpKind& k, const Abscissa& lo,
                       const Abscissa& hi) {
  const double len = width(lo, hi);
  if (len <= 0.0) return ExtValue::exact(0.0);
  if (k.alpha == 0.0) return closed(k.c * len);
  return closed(exp_segment(eval_exp(k, lo.x), k.alpha, 0.0, len));
}

ExtValue integrate_table(const TableKind& k, const Abscissa& lo,
                         const Abscissa& hi) {
  const std::size_t n = k.t.size();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double s0 = std::max(lo.x, k.t[i]);
    const double s1 = std::min(hi.x, k.t[i + 1]);
    if (!(s1 > s0)) continue;
    double w = s1 - s0;
    if (s1 == hi.x && s0 == lo.x) w = width(lo, hi);
    const double sl = table_slope(k, i);
    sum += exp_segment(k.v[i] * std::exp(sl * (s0 - k.t[i])), sl, 0.0, w);
  }
  return closed(sum);
}

// Maximum of t^alpha (b - t)^beta style functions over an interval: the
// supremum sits at an end or at the interior critical point.
double sup_power(const PowerKind& k, double b, const Abscissa& lo,
                 const Abscissa& hi) {
  double best = std::max(eval_power(k, lo), eval_power(k, hi));
  if (std::isinf(hi.x)) {
    if (k.alpha > 0.0) return kInf;
    best = std::max(best, eval_power(k, lo));
  }
  if (k.alpha > 0.0 && k.beta > 0.0 && std::isfinite(b)) {
    const double ts = k.alpha * b / (k.alpha + k.beta);
    if (ts > lo.x && ts < hi.x) {
      best = std::max(best, eval_power(k, {ts, b - ts}));
    }
  }
  return best;
}

}  // namespace

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!(lo >= 0.0) || !std::isfinite(lo)) {
    throw DomainError("interval left end must be finite and >= 0, got " +
                      fmt(lo));
  }
  if (!(hi > lo)) {
    throw DomainError("interval must satisfy a < b, got (" + fmt(lo) + ", " +
                      fmt(hi) + ")");
  }
}

Abscissa at(const Interval& dom, double x) {
  return {x, std::isinf(dom.b) ? kInf : dom.b - x};
}

Abscissa at_gap(const Interval& dom, double gap) {
  return {dom.b - gap, gap};
}

double width(const Abscissa& lo, const Abscissa& hi) {
  if (std::isinf(hi.x)) return kInf;
  if (std::isfinite(lo.gap) && lo.gap < lo.x) return lo.gap - hi.gap;
  return hi.x - lo.x;
}

Abscissa shift_right(const Abscissa& p, double d) {
  return {p.x + d, p.gap - d};
}

Abscissa shift_left(const Abscissa& p, double d) {
  return {p.x - d, p.gap + d};
}

Abscissa lerp(const Abscissa& lo, const Abscissa& hi, double theta) {
  if (std::isinf(hi.x)) return {lo.x + theta, lo.gap};
  const double w = width(lo, hi);
  if (theta <= 0.5) return shift_right(lo, theta * w);
  return shift_left(hi, (1.0 - theta) * w);
}

bool before(const Abscissa& lo, const Abscissa& hi) {
  if (std::isfinite(lo.gap) && lo.gap < lo.x) return lo.gap > hi.gap;
  return lo.x < hi.x;
}

Weight Weight::power(Interval dom, double c, double alpha, double beta) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("power weight needs a positive finite coefficient");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("power weight exponents must be finite");
  }
  if (beta != 0.0 && std::isinf(dom.b)) {
    throw DomainError("power weight with beta != 0 needs a finite right end");
  }
  return Weight(dom, PowerKind{c, alpha, beta});
}

Weight Weight::exponential(Interval dom, double c, double alpha) {
  if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(alpha)) {
    throw DomainError("exponential weight needs c > 0 and finite alpha");
  }
  return Weight(dom, ExpKind{c, alpha});
}

Weight Weight::piecewise(std::vector<Weight> pieces) {
  if (pieces.empty()) throw DomainError("piecewise weight without pieces");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].domain().b != pieces[i + 1].domain().a) {
      throw DomainError("piecewise weight pieces must be contiguous");
    }
  }
  // Flatten nested piecewise weights so lookups stay one level deep.
  std::vector<Weight> flat;
  for (auto& p : pieces) {
    if (auto* pw = std::get_if<PiecewiseKind>(&p.kind_)) {
      for (auto& q : pw->pieces) flat.push_back(q);
    } else {
      flat.push_back(p);
    }
  }
  Interval dom(flat.front().domain().a, flat.back().domain().b);
  return Weight(dom, PiecewiseKind{std::move(flat)});
}

Weight Weight::table(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw DomainError("table weight needs >= 2 points");
  TableKind k;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, v] = points[i];
    if (!std::isfinite(t) || !(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("table point " + std::to_string(i) +
                        " must have finite abscissa and positive value");
    }
    if (i > 0 && !(t > k.t.back())) {
      throw DomainError("table abscissae must be strictly increasing");
    }
    k.t.push_back(t);
    k.v.push_back(v);
  }
  Interval dom(k.t.front(), k.t.back());
  return Weight(dom, std::move(k));
}

bool Weight::is_constant() const {
  return std::visit(
      overloaded{
          [](const PowerKind& k) { return k.alpha == 0.0 && k.beta == 0.0; },
          [](const ExpKind& k) { return k.alpha == 0.0; },
          [](const PiecewiseKind& k) {
            double c0 = -1.0;
            for (const auto& p : k.pieces) {
              if (!p.is_constant()) return false;
              const double c = eval(p, 0.5 * (p.domain().a +
                                               std::min(p.domain().b,
                                                        p.domain().a + 2.0)));
              if (c0 >= 0.0 && c != c0) return false;
              c0 = c;
            }
            return true;
          },
          [](const TableKind& k) {
            return std::all_of(k.v.begin(), k.v.end(),
                               [&](double v) { return v == k.v.front(); });
          }},
      kind_);
}

std::vector<double> Weight::breakpoints() const {
  std::vector<double> out;
  if (auto* pw = std::get_if<PiecewiseKind>(&kind_)) {
    for (std::size_t i = 0; i + 1 < pw->pieces.size(); ++i) {
      out.push_back(pw->pieces[i].domain().b);
    }
  } else if (auto* tb = std::get_if<TableKind>(&kind_)) {
    out.assign(tb->t.begin() + 1, tb->t.end() - 1);
  }
  return out;
}

double eval(const Weight& w, double x) {
  const Interval& d = w.domain();
  if (!(x > d.a && x < d.b)) {
    throw DomainError("evaluation point " + fmt(x) +
                      " outside open domain (" + fmt(d.a) + ", " + fmt(d.b) +
                      ")");
  }
  return value_at(w, at(d, x));
}

double value_at(const Weight& w, const Abscissa& p) {
  return std::visit(
      overloaded{[&](const PowerKind& k) { return eval_power(k, p); },
                 [&](const ExpKind& k) { return eval_exp(k, p.x); },
                 [&](const PiecewiseKind& k) {
                   // Right-continuous at joins.
                   for (const auto& piece : k.pieces) {
                     if (p.x < piece.domain().b || &piece == &k.pieces.back())
                       return value_at(piece, localize(p, piece.domain()));
                   }
                   return 0.0;
                 },
                 [&](const TableKind& k) { return eval_table(k, p.x); }},
      w.kind());
}

double right_limit(const Weight& w, const Abscissa& p) {
  return value_at(w, p);
}

double left_limit(const Weight& w, const Abscissa& p) {
  if (auto* pw = std::get_if<PiecewiseKind>(&w.kind())) {
    for (const auto& piece : pw->pieces) {
      if (p.x <= piece.domain().b)
        return value_at(piece, localize(p, piece.domain()));
    }
    return value_at(pw->pieces.back(), localize(p, pw->pieces.back().domain()));
  }
  return value_at(w, p);
}

ExtValue integrate(const Weight& w, const Abscissa& lo, const Abscissa& hi,
                   const Quadrature& quad) {
  check_inside(w, lo, hi);
  if (!before(lo, hi)) return ExtValue::exact(0.0);
  return std::visit(
      overloaded{
          [&](const PowerKind& k) {
            return integrate_power(w, k, lo, hi, quad);
          },
          [&](const ExpKind& k) { return integrate_exp(k, lo, hi); },
          [&](const PiecewiseKind& k) {
            ExtValue sum = ExtValue::exact(0.0);
            for (const auto& piece : k.pieces) {
              const Interval& pd = piece.domain();
              if (pd.b <= lo.x || pd.a >= hi.x) continue;
              const Abscissa l =
                  lo.x >= pd.a ? localize(lo, pd) : at(pd, pd.a);
              const Abscissa h =
                  hi.x <= pd.b ? localize(hi, pd) : Abscissa{pd.b, 0.0};
              ExtValue part = integrate(piece, l, h, quad);
              if (part.is_infinite()) return ExtValue::infinite();
              sum.value += part.value;
              sum.error_estimate += part.error_estimate;
            }
            return sum;
          },
          [&](const TableKind& k) { return integrate_table(k, lo, hi); }},
      w.kind());
}

ExtValue integrate(const Weight& w, double x, double y,
                   const Quadrature& quad) {
  const Interval& d = w.domain();
  return integrate(w, at(d, x), y == d.b ? right_end(d) : at(d, y), quad);
}

namespace {

// One smooth stretch of w; a flagged end gets geometric panels.
ExtValue adaptive_segment(const Weight& w, const Abscissa& lo,
                          const Abscissa& hi, bool sing_l, bool sing_r,
                          const Quadrature& quad) {
  ExtValue out = ExtValue::exact(0.0);
  auto add = [&](ExtValue part) {
    if (part.is_infinite()) {
      out = ExtValue::infinite();
      return false;
    }
    out.value += part.value;
    out.error_estimate += part.error_estimate;
    return true;
  };
  const double len = width(lo, hi);
  const double half = 0.5 * len;
  // Left half toward lo, right half toward hi; panels shrink geometrically
  // so endpoint singularities are resolved without a substitution.
  auto gl = [&](double dd) { return value_at(w, shift_right(lo, dd)); };
  auto gr = [&](double dd) { return value_at(w, shift_left(hi, dd)); };
  const double min_r =
      std::max(1e-300, 4 * kEps * std::min(std::abs(hi.x), hi.gap + len));
  if (sing_l) {
    if (!add(integrate_toward_end(gl, half, std::max(1e-300, lo.x * kEps),
                                  quad)))
      return out;
  } else {
    QuadResult r = gauss_kronrod(gl, 0.0, half, 0.1 * quad.rel_tol,
                                 quad.abs_tol, quad.max_panels);
    if (!add({r.value, r.error})) return out;
  }
  if (sing_r) {
    add(integrate_toward_end(gr, half, min_r, quad));
  } else {
    QuadResult r = gauss_kronrod(gr, 0.0, half, 0.1 * quad.rel_tol,
                                 quad.abs_tol, quad.max_panels);
    add({r.value, r.error});
  }
  return out;
}

}  // namespace

ExtValue integrate_adaptive(const Weight& w, const Abscissa& lo,
                            const Abscissa& hi, const Quadrature& quad) {
  check_inside(w, lo, hi);
  if (!before(lo, hi)) return ExtValue::exact(0.0);
  const Interval& d = w.domain();
  ExtValue out = ExtValue::exact(0.0);
  auto add = [&](ExtValue part) {
    if (part.is_infinite()) {
      out = ExtValue::infinite();
      return false;
    }
    out.value += part.value;
    out.error_estimate += part.error_estimate;
    return true;
  };
  if (std::isinf(hi.x)) {
    // t = lo + (1 - s)/s for s in (0, 1]; dt = ds / s^2.
    auto g = [&](double s) {
      const double t = lo.x + (1.0 - s) / s;
      return value_at(w, {t, kInf}) / (s * s);
    };
    ExtValue head = integrate_adaptive(w, lo, {lo.x + 1.0, kInf}, quad);
    if (!add(head)) return out;
    ExtValue tail = integrate_toward_end(g, 0.5, 1e-300, quad);
    add(tail);
    return out;
  }
  // Piece joins may carry endpoint singularities of their own.
  Abscissa from = lo;
  bool sing_l = lo.x == 0.0 || lo.x == d.a;
  for (double b : w.breakpoints()) {
    const Abscissa to = at(d, b);
    if (!before(from, to) || !before(to, hi)) continue;
    if (!add(adaptive_segment(w, from, to, sing_l, true, quad))) return out;
    from = to;
    sing_l = true;
  }
  add(adaptive_segment(w, from, hi, sing_l, hi.gap == 0.0 || hi.x == d.b, quad));
  return out;
}

ExtValue tail_W(const Weight& w, const Abscissa& x, const Quadrature& quad) {
  const Interval& d = w.domain();
  ExtValue v = integrate(w, x, right_end(d), quad);
  if (x.x > d.a && (v.is_infinite() || !(v.value > 0.0))) {
    throw HypothesisViolation("tail integral W(" + fmt(x.x) + ") = " +
                              fmt(v.value) +
                              " on an interior point; need 0 < W < inf");
  }
  return v;
}

ExtValue tail_W(const Weight& w, double x, const Quadrature& quad) {
  const Interval& d = w.domain();
  if (!(x >= d.a && x < d.b)) {
    throw DomainError("tail_W point " + fmt(x) + " outside [a, b)");
  }
  return tail_W(w, at(d, x), quad);
}

double ess_sup(const Weight& w, const Abscissa& lo, const Abscissa& hi) {
  check_inside(w, lo, hi);
  return std::visit(
      overloaded{
          [&](const PowerKind& k) {
            return sup_power(k, w.domain().b, lo, hi);
          },
          [&](const ExpKind& k) {
            if (std::isinf(hi.x)) {
              return k.alpha > 0.0 ? kInf : eval_exp(k, lo.x);
            }
            return std::max(eval_exp(k, lo.x), eval_exp(k, hi.x));
          },
          [&](const PiecewiseKind& k) {
            double best = 0.0;
            for (const auto& piece : k.pieces) {
              const Interval& pd = piece.domain();
              if (pd.b <= lo.x || pd.a >= hi.x) continue;
              const Abscissa l =
                  lo.x >= pd.a ? localize(lo, pd) : at(pd, pd.a);
              const Abscissa h =
                  hi.x <= pd.b ? localize(hi, pd) : Abscissa{pd.b, 0.0};
              best = std::max(best, ess_sup(piece, l, h));
            }
            return best;
          },
          [&](const TableKind& k) {
            double best = std::max(eval_table(k, lo.x), eval_table(k, hi.x));
            for (std::size_t i = 0; i < k.t.size(); ++i) {
              if (k.t[i] > lo.x && k.t[i] < hi.x) best = std::max(best, k.v[i]);
            }
            return best;
          }},
      w.kind());
}

ExtValue ess_sup_grid(const Weight& w, const Abscissa& lo, const Abscissa& hi,
                      const Quadrature& quad) {
  check_inside(w, lo, hi);
  if (!before(lo, hi)) return ExtValue::exact(0.0);
  // On an unbounded range the grid lives on the compactified variable
  // s = (t - lo)/(1 + t - lo).
  auto point = [&](double theta) -> Abscissa {
    if (std::isinf(hi.x)) return {lo.x + theta / (1.0 - theta), kInf};
    return lerp(lo, hi, theta);
  };
  double best = 0.0, prev = -1.0;
  int growth = 0;
  for (int m = 3; m <= 22; ++m) {
    const long n = 1L << m;
    for (long j = 1; j < n; j += (m == 3 ? 1 : 2)) {
      const double v = value_at(w, point(static_cast<double>(j) / n));
      if (v > best) best = v;
    }
    if (best > quad.divergence_threshold) return ExtValue::infinite();
    if (prev > 0.0) {
      if (best > 1.5 * prev) {
        if (++growth >= 3) return ExtValue::infinite();
      } else {
        growth = 0;
      }
      if (best - prev <= quad.rel_tol * best) return {best, best - prev};
    }
    prev = best;
  }
  return {best, quad.rel_tol * best};
}

ExtValue v_r(const Weight& v, double r, const Abscissa& x, const Abscissa& y,
             const Quadrature& quad) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw DomainError("V_r needs 0 < r <= 1, got r = " + fmt(r));
  }
  if (r == 1.0) {
    check_inside(v, x, y);
    if (!before(x, y)) return ExtValue::exact(0.0);
    const double s = ess_sup(v, x, y);
    return std::isinf(s) ? ExtValue::infinite() : ExtValue::exact(s);
  }
  const ExtValue in = integrate(pow(v, 1.0 / (1.0 - r)), x, y, quad);
  if (in.is_infinite()) return in;
  const double e = (1.0 - r) / r;
  const double val = std::pow(in.value, e);
  const double rel = in.value > 0.0 ? in.error_estimate / in.value : 0.0;
  return {val, val * e * rel};
}

ExtValue v_r(const Weight& v, double r, double x, double y,
             const Quadrature& quad) {
  const Interval& d = v.domain();
  return v_r(v, r, at(d, x), y == d.b ? right_end(d) : at(d, y), quad);
}

ExtValue v_r_right_limit(const Weight& v, double r, const Abscissa& x,
                         const Abscissa& y, const Quadrature& quad) {
  ExtValue base = v_r(v, r, x, y, quad);
  if (r < 1.0 || base.is_infinite()) return base;
  return ExtValue::exact(std::max(base.value, right_limit(v, y)));
}

ExtValue v_r_right_limit(const Weight& v, double r, double x, double y,
                         const Quadrature& quad) {
  const Interval& d = v.domain();
  if (!(y < d.b)) throw DomainError("V_r(x, y+) needs y < b");
  return v_r_right_limit(v, r, at(d, x), at(d, y), quad);
}

Weight pow(const Weight& w, double e) {
  return std::visit(
      overloaded{
          [&](const PowerKind& k) {
            return Weight::power(w.domain(), std::pow(k.c, e), k.alpha * e,
                                 k.beta * e);
          },
          [&](const ExpKind& k) {
            return Weight::exponential(w.domain(), std::pow(k.c, e),
                                       k.alpha * e);
          },
          [&](const PiecewiseKind& k) {
            std::vector<Weight> out;
            for (const auto& p : k.pieces) out.push_back(pow(p, e));
            return Weight::piecewise(std::move(out));
          },
          [&](const TableKind& k) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t i = 0; i < k.t.size(); ++i)
              pts.emplace_back(k.t[i], std::pow(k.v[i], e));
            return Weight::table(pts);
          }},
      w.kind());
}

Weight scale(const Weight& w, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("scale factor must be positive and finite");
  }
  return std::visit(
      overloaded{
          [&](const PowerKind& k) {
            return Weight::power(w.domain(), k.c * lambda, k.alpha, k.beta);
          },
          [&](const ExpKind& k) {
            return Weight::exponential(w.domain(), k.c * lambda, k.alpha);
          },
          [&](const PiecewiseKind& k) {
            std::vector<Weight> out;
            for (const auto& p : k.pieces) out.push_back(scale(p, lambda));
            return Weight::piecewise(std::move(out));
          },
          [&](const TableKind& k) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t i = 0; i < k.t.size(); ++i)
              pts.emplace_back(k.t[i], k.v[i] * lambda);
            return Weight::table(pts);
          }},
      w.kind());
}

Weight product(const Weight& w1, const Weight& w2) {
  if (!(w1.domain() == w2.domain())) {
    throw DomainError("product of weights on different domains");
  }
  if (w2.is_constant() && !std::holds_alternative<PiecewiseKind>(w2.kind())) {
    return scale(w1, value_at(w2, at(w2.domain(), w2.domain().a)));
  }
  if (w1.is_constant() && !std::holds_alternative<PiecewiseKind>(w1.kind())) {
    return scale(w2, value_at(w1, at(w1.domain(), w1.domain().a)));
  }
  const auto* p1 = std::get_if<PowerKind>(&w1.kind());
  const auto* p2 = std::get_if<PowerKind>(&w2.kind());
  if (p1 && p2) {
    return Weight::power(w1.domain(), p1->c * p2->c, p1->alpha + p2->alpha,
                         p1->beta + p2->beta);
  }
  const auto* e1 = std::get_if<ExpKind>(&w1.kind());
  const auto* e2 = std::get_if<ExpKind>(&w2.kind());
  if (e1 && e2) {
    return Weight::exponential(w1.domain(), e1->c * e2->c,
                               e1->alpha + e2->alpha);
  }
  const auto* pw1 = std::get_if<PiecewiseKind>(&w1.kind());
  const auto* pw2 = std::get_if<PiecewiseKind>(&w2.kind());
  if (pw1 && pw2 && w1.breakpoints() == w2.breakpoints()) {
    std::vector<Weight> out;
    for (std::size_t i = 0; i < pw1->pieces.size(); ++i)
      out.push_back(product(pw1->pieces[i], pw2->pieces[i]));
    return Weight::piecewise(std::move(out));
  }
  if (pw1 || pw2) {
    // Split the other factor along the piecewise breaks when it is symbolic.
    const auto& pw = pw1 ? *pw1 : *pw2;
    const Weight& other = pw1 ? w2 : w1;
    if (std::holds_alternative<ExpKind>(other.kind()) ||
        (std::holds_alternative<PowerKind>(other.kind()) &&
         std::get<PowerKind>(other.kind()).beta == 0.0)) {
      std::vector<Weight> out;
      for (const auto& piece : pw.pieces) {
        Weight restricted = std::visit(
            overloaded{
                [&](const PowerKind& k) {
                  return Weight::power(piece.domain(), k.c, k.alpha, 0.0);
                },
                [&](const ExpKind& k) {
                  return Weight::exponential(piece.domain(), k.c, k.alpha);
                },
                [&](const auto&) -> Weight {
                  throw DomainError("product not representable");
                }},
            other.kind());
        out.push_back(product(piece, restricted));
      }
      return Weight::piecewise(std::move(out));
    }
  }
  const auto* t1 = std::get_if<TableKind>(&w1.kind());
  const auto* t2 = std::get_if<TableKind>(&w2.kind());
  if (t1 && t2 && t1->t == t2->t) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < t1->t.size(); ++i)
      pts.emplace_back(t1->t[i], t1->v[i] * t2->v[i]);
    return Weight::table(pts);
  }
  throw DomainError(
      "product of these weight kinds is not representable; use matching "
      "kinds, matching breakpoints, or a constant factor");
}

}  // namespace hardy
