#include "hardy/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace hardy {

namespace {

constexpr double kBisectTol = 1e-12;
constexpr double kAcceptTol = 1e-8;
constexpr int kMaxBisect = 400;
constexpr int kMaxProbe = 300;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double W_at(const Weight& w, const Abscissa& p, const Quadrature& quad) {
  return tail_W(w, p, quad).value;
}

// Midpoint of [lo, hi]; geometric in x or in the gap when the bracket spans
// many orders of magnitude there.
Abscissa midpoint(const Interval& dom, const Abscissa& lo, const Abscissa& hi) {
  if (!std::isfinite(hi.x)) return {lo.x + std::max(1.0, lo.x), kInf};
  if (std::isfinite(hi.gap) && hi.gap > 0.0 && lo.gap > 16.0 * hi.gap &&
      hi.gap < 0.5 * hi.x) {
    return at_gap(dom, std::sqrt(lo.gap * hi.gap));
  }
  if (lo.x > 0.0 && hi.x > 16.0 * lo.x) {
    return at(dom, std::sqrt(lo.x * hi.x));
  }
  return lerp(lo, hi, 0.5);
}

struct Solve {
  bool ok = false;
  Abscissa x;
  double W = 0.0;
};

// Solves W(x) = target for x in (lo, hi) given W(lo) > target >= W(hi).
Solve bisect(const Weight& w, const Interval& dom, Abscissa lo, Abscissa hi,
             double target, const Quadrature& quad) {
  Solve best;
  double best_err = kInf;
  for (int it = 0; it < kMaxBisect; ++it) {
    const Abscissa mid = midpoint(dom, lo, hi);
    if (!before(lo, mid) || !before(mid, hi)) break;
    const double Wm = W_at(w, mid, quad);
    const double err = std::abs(Wm / target - 1.0);
    if (err < best_err) {
      best_err = err;
      best = {true, mid, Wm};
    }
    if (err <= kBisectTol) return best;
    if (Wm > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  best.ok = best.ok && best_err <= kAcceptTol;
  return best;
}

// Finds hi beyond lo with W(hi) <= target, moving toward b.
bool probe_right(const Weight& w, const Interval& dom, const Abscissa& lo,
                 double target, const Quadrature& quad, Abscissa& hi) {
  if (!dom.unbounded()) {
    double g = lo.gap;
    for (int j = 0; j < kMaxProbe; ++j) {
      g *= 0.25;
      if (!(g > 0.0)) break;
      const Abscissa p = at_gap(dom, g);
      if (!before(lo, p)) continue;
      if (W_at(w, p, quad) <= target) {
        hi = p;
        return true;
      }
    }
    hi = right_end(dom);
    return true;  // W(b) = 0
  }
  double step = std::max(1.0, lo.x);
  for (int j = 0; j < kMaxProbe; ++j) {
    const Abscissa p = at(dom, lo.x + step);
    if (!std::isfinite(p.x)) return false;
    if (W_at(w, p, quad) <= target) {
      hi = p;
      return true;
    }
    step *= 4.0;
  }
  return false;
}

// Finds lo before hi with W(lo) > target, moving toward a.
bool probe_left(const Weight& w, const Interval& dom, const Abscissa& hi,
                double target, const Quadrature& quad, Abscissa& lo) {
  double d = hi.x - dom.a;
  for (int j = 0; j < kMaxProbe; ++j) {
    d *= 0.25;
    const Abscissa p = at(dom, dom.a + d);
    if (!(p.x > dom.a) || !before(p, hi)) return false;
    if (W_at(w, p, quad) > target) {
      lo = p;
      return true;
    }
  }
  return false;
}

EquivCheck make_check(double lhs, double rhs) {
  EquivCheck c{lhs, rhs, 1.0};
  if (rhs > 0.0) {
    c.ratio = lhs / rhs;
  } else if (lhs > 0.0) {
    c.ratio = kInf;
  }
  return c;
}

std::size_t index_of(const DiscretizingSequence& seq, int k) {
  if (seq.size() == 0 || k < seq.first_level() || k > seq.last_level()) {
    throw DomainError("level " + std::to_string(k) +
                      " is outside the discretizing sequence");
  }
  return static_cast<std::size_t>(k - seq.first_level());
}

// Max of f over the closed cell [lo, hi] sampled on dyadic grids.
double cell_max(const std::function<double(const Abscissa&)>& f,
                const Abscissa& lo, const Abscissa& hi) {
  double best = std::max(f(lo), f(hi));
  double prev = best;
  for (int m = 1; m <= 10; ++m) {
    const int n = 1 << m;
    for (int j = 1; j < n; j += 2) {
      best = std::max(best, f(lerp(lo, hi, static_cast<double>(j) / n)));
    }
    if (m >= 4 && best <= prev * (1.0 + 1e-12)) break;
    prev = best;
  }
  return best;
}

double pow0(double x, double e) { return x == 0.0 ? 0.0 : std::pow(x, e); }

}  // namespace

double DiscretizingSequence::inv_W(int k) const { return std::ldexp(1.0 / W0, k); }

DiscretizingSequence build_discretizing_sequence(const Weight& w,
                                                 const Quadrature& quad,
                                                 int k_min, int k_max) {
  if (k_min > k_max) throw DomainError("k_min must not exceed k_max");
  const Interval dom = w.domain();
  DiscretizingSequence seq;
  seq.domain = dom;
  seq.truncation.k_min = k_min;
  seq.truncation.k_max = k_max;

  const Abscissa a = left_end(dom);
  const double Wa = W_at(w, a, quad);
  if (std::isfinite(Wa)) {
    if (!(Wa > 0.0)) throw HypothesisViolation("W(a) = 0: w vanishes a.e.");
    seq.n_finite = true;
    seq.W0 = Wa;
    seq.points.push_back(a);
    seq.levels.push_back(0);
    seq.W.push_back(Wa);
    seq.truncation.head_mass = Wa;
    seq.truncation.k_min = 0;
  } else {
    seq.n_finite = false;
    const Abscissa ref =
        dom.unbounded() ? at(dom, dom.a + 1.0) : lerp(a, right_end(dom), 0.5);
    const double Wr = W_at(w, ref, quad);
    if (!(Wr > 0.0) || !std::isfinite(Wr)) {
      throw HypothesisViolation("W(" + fmt(ref.x) + ") is not in (0, inf)");
    }
    seq.W0 = Wr;
    // Levels below 0 lie left of the reference point.
    std::vector<Abscissa> left_pts;
    std::vector<double> left_W;
    Abscissa hi = ref;
    int reached = 0;
    for (int k = -1; k >= k_min; --k) {
      const double target = std::ldexp(Wr, -k);
      Abscissa lo;
      if (!probe_left(w, dom, hi, target, quad, lo)) break;
      const Solve s = bisect(w, dom, lo, hi, target, quad);
      if (!s.ok) break;
      left_pts.push_back(s.x);
      left_W.push_back(s.W);
      hi = s.x;
      reached = k;
    }
    if (reached > k_min) {
      seq.notes.push_back("levels below " + std::to_string(reached) +
                          " cannot be resolved in double precision");
    }
    for (std::size_t i = left_pts.size(); i-- > 0;) {
      seq.points.push_back(left_pts[i]);
      seq.W.push_back(left_W[i]);
      seq.levels.push_back(-static_cast<int>(i) - 1);
    }
    if (k_min <= 0) {
      seq.points.push_back(ref);
      seq.W.push_back(Wr);
      seq.levels.push_back(0);
    }
    seq.truncation.k_min = std::max(k_min, reached);
  }

  Abscissa lo = seq.points.empty() ? a : seq.points.back();
  int last = seq.levels.empty() ? 0 : seq.levels.back();
  for (int k = last + 1; k <= k_max; ++k) {
    const double target = std::ldexp(seq.W0, -k);
    Abscissa hi;
    if (!probe_right(w, dom, lo, target, quad, hi)) {
      seq.notes.push_back("no point with W <= 2^-" + std::to_string(k) +
                          " W0 found");
      break;
    }
    const Solve s = bisect(w, dom, lo, hi, target, quad);
    if (!s.ok) {
      seq.notes.push_back("level " + std::to_string(k) +
                          " cannot be resolved in double precision");
      break;
    }
    seq.points.push_back(s.x);
    seq.W.push_back(s.W);
    seq.levels.push_back(k);
    lo = s.x;
  }
  // Levels below k_min are kept only for the N = -inf anchoring.
  while (!seq.levels.empty() && seq.levels.front() < k_min && !seq.n_finite) {
    seq.levels.erase(seq.levels.begin());
    seq.points.erase(seq.points.begin());
    seq.W.erase(seq.W.begin());
  }
  if (seq.points.size() < 2) {
    throw QuadratureError("discretizing sequence has fewer than two points");
  }
  seq.truncation.k_max = seq.levels.back();
  seq.truncation.tail_mass = seq.W.back();
  if (!seq.n_finite) seq.truncation.head_mass = seq.W.front();
  return seq;
}

IntSupCheck check_int_sup_equiv(const Weight& w,
                                const std::function<double(double)>& h,
                                double beta, const DiscretizingSequence& seq,
                                int n, const Quadrature& quad) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const std::size_t i0 = index_of(seq, n);
  if (i0 + 1 >= seq.size()) throw DomainError("n must precede the last level");
  double lhs_int = 0.0, rhs_int = 0.0, lhs_sup = 0.0, rhs_sup = 0.0;
  for (std::size_t i = i0 + 1; i < seq.size(); ++i) {
    const Abscissa& lo = seq.points[i - 1];
    const Abscissa& hi = seq.points[i];
    const double len = width(lo, hi);
    auto integrand = [&](double theta) {
      const Abscissa p = lerp(lo, hi, theta);
      const double hv = h(p.x);
      if (hv == 0.0) return 0.0;
      return std::pow(W_at(w, p, quad), beta - 1.0) * value_at(w, p) * hv * len;
    };
    const QuadResult r = gauss_kronrod(integrand, 0.0, 1.0, 0.1 * quad.rel_tol,
                                       quad.abs_tol, quad.max_panels);
    lhs_int += r.value;
    auto g = [&](const Abscissa& p) {
      return pow0(W_at(w, p, quad), beta) * h(p.x);
    };
    lhs_sup = std::max(lhs_sup, cell_max(g, lo, hi));
    const double Wk = std::ldexp(seq.W0, -seq.levels[i]);
    const double term = std::pow(Wk, beta) * h(hi.x);
    rhs_int += term;
    rhs_sup = std::max(rhs_sup, term);
  }
  if (!std::isfinite(lhs_int) && std::isfinite(rhs_int)) {
    throw QuadratureError("divergent integral against a finite sum");
  }
  return {make_check(lhs_int, rhs_int), make_check(lhs_sup, rhs_sup)};
}

EquivCheck check_neg_sup_equiv(const Weight& w,
                               const std::function<double(double)>& h,
                               double beta, const DiscretizingSequence& seq,
                               int m, const Quadrature& quad) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const std::size_t im = index_of(seq, m);
  if (im == 0) throw DomainError("m must follow the first level");
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 1; i <= im; ++i) {
    const Abscissa& lo = seq.points[i - 1];
    const Abscissa& hi = seq.points[i];
    auto g = [&](const Abscissa& p) {
      const double hv = h(p.x);
      return hv == 0.0 ? 0.0 : std::pow(W_at(w, p, quad), -beta) * hv;
    };
    lhs = std::max(lhs, cell_max(g, lo, hi));
    rhs = std::max(rhs, std::pow(seq.inv_W(seq.levels[i]), beta) * h(lo.x));
  }
  return make_check(lhs, rhs);
}

SequenceSample SequenceSample::from(std::vector<double> values) {
  SequenceSample s;
  s.values = std::move(values);
  for (double v : s.values) {
    if (!(v > 0.0)) throw DomainError("sequence values must be positive");
  }
  if (s.values.size() < 2) {
    s.kind = SequenceKind::general;
    return s;
  }
  double lo = kInf, hi = 0.0;
  for (std::size_t k = 0; k + 1 < s.values.size(); ++k) {
    const double q = s.values[k + 1] / s.values[k];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (hi < 1.0) {
    s.kind = SequenceKind::strongly_decreasing;
    s.ratio_bound = hi;
  } else if (lo > 1.0) {
    s.kind = SequenceKind::strongly_increasing;
    s.ratio_bound = lo;
  } else {
    s.kind = SequenceKind::general;
  }
  return s;
}

std::vector<SequenceIdentity> sequence_equiv_suite(const SequenceSample& a,
                                                   const std::vector<double>& b,
                                                   double alpha) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const std::size_t n = a.values.size();
  if (n == 0 || b.size() != n) {
    throw DomainError("sequences must be non-empty and of equal length");
  }
  for (double x : b) {
    if (!(x > 0.0)) throw DomainError("b must be positive");
  }
  const auto& av = a.values;
  SequenceKind kind = a.kind;
  if (n == 1) kind = SequenceKind::strongly_decreasing;
  if (kind == SequenceKind::general) {
    throw DomainError("kind mismatch: a is neither strongly increasing nor "
                      "strongly decreasing");
  }
  std::vector<double> pre_sum(n), pre_sup(n), suf_sum(n), suf_sup(n);
  for (std::size_t k = 0; k < n; ++k) {
    pre_sum[k] = b[k] + (k ? pre_sum[k - 1] : 0.0);
    pre_sup[k] = std::max(b[k], k ? pre_sup[k - 1] : 0.0);
  }
  for (std::size_t k = n; k-- > 0;) {
    suf_sum[k] = b[k] + (k + 1 < n ? suf_sum[k + 1] : 0.0);
    suf_sup[k] = std::max(b[k], k + 1 < n ? suf_sup[k + 1] : 0.0);
  }
  double plain_sum = 0.0, plain_sup = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = av[k] * std::pow(b[k], alpha);
    plain_sum += t;
    plain_sup = std::max(plain_sup, t);
  }
  auto sum_of = [&](const std::vector<double>& inner) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += av[k] * std::pow(inner[k], alpha);
    return s;
  };
  auto sup_of = [&](const std::vector<double>& inner) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s = std::max(s, av[k] * std::pow(inner[k], alpha));
    }
    return s;
  };
  std::vector<SequenceIdentity> out;
  const bool single = n == 1;
  if (kind == SequenceKind::strongly_decreasing) {
    out.push_back({"dec.sum-sum", sum_of(pre_sum), plain_sum});
    out.push_back({"dec.sum-sup", sum_of(pre_sup), plain_sum});
    out.push_back({"dec.sup-sum", sup_of(pre_sum), plain_sup});
  }
  if (kind == SequenceKind::strongly_increasing || single) {
    out.push_back({"inc.sup-sup", sup_of(suf_sup), plain_sup});
    out.push_back({"inc.sum-sum", sum_of(suf_sum), plain_sum});
    out.push_back({"inc.sup-sum", sup_of(suf_sum), plain_sup});
    out.push_back({"inc.sum-sup", sum_of(suf_sup), plain_sum});
  }
  return out;
}

KernelCheck regular_kernel_check(const std::function<double(int, int)>& d,
                                 const std::vector<double>& a,
                                 const std::vector<double>& b, double beta) {
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  const int n = static_cast<int>(a.size());
  if (n == 0 || b.size() != a.size()) {
    throw DomainError("sequences must be non-empty and of equal length");
  }
  for (int k = 0; k + 1 < n; ++k) {
    if (!(a[k + 1] > a[k])) throw DomainError("a must be strongly increasing");
  }
  const int top = n;  // d is needed on [0, M+1]
  auto witness = [](const char* what, int k, int j, int i) {
    return DomainError(std::string("kernel regularity violated (") + what +
                       ") at (k, j, i) = (" + std::to_string(k) + ", " +
                       std::to_string(j) + ", " + std::to_string(i) + ")");
  };
  KernelCheck out;
  for (int k = 0; k <= top; ++k) {
    for (int i = k; i <= top; ++i) {
      const double dki = d(k, i);
      if (!(dki >= 0.0)) throw witness("negative value", k, k, i);
      if (i + 1 <= top && d(k, i + 1) < dki) {
        throw witness("decreasing in the second index", k, i, i + 1);
      }
      if (k + 1 <= i && d(k + 1, i) > dki) {
        throw witness("increasing in the first index", k, k + 1, i);
      }
      for (int j = k; j <= i; ++j) {
        const double den = d(k, j) + d(j, i);
        if (den > 0.0) {
          out.triangle_constant = std::max(out.triangle_constant, dki / den);
        } else if (dki > 0.0) {
          throw witness("quasi-triangle inequality", k, j, i);
        }
      }
    }
  }
  double sup_l = 0.0, sup_r = 0.0, sum_l = 0.0, sum_r = 0.0;
  for (int k = 0; k < n; ++k) {
    double inner = 0.0, mass = 0.0;
    for (int i = k; i < n; ++i) {
      inner += d(k, i + 1) * b[i];
      mass += b[i];
    }
    const double l = a[k] * pow0(inner, beta);
    const double r = a[k] * pow0(d(k, k + 1), beta) * pow0(mass, beta);
    sup_l = std::max(sup_l, l);
    sup_r = std::max(sup_r, r);
    sum_l += l;
    sum_r += r;
  }
  out.kersup = make_check(sup_l, sup_r);
  out.kersum = make_check(sum_l, sum_r);
  return out;
}

UEstimate u_estimate(const Weight& u, double x, double y, double z,
                     double alpha, const Quadrature& quad) {
  if (!(x <= y && y <= z)) throw DomainError("u_estimate needs x <= y <= z");
  const Interval dom = u.domain();
  const Abscissa pz = at(dom, z);
  auto integrand = [&](double t) {
    const Abscissa pt = at(dom, t);
    return std::pow(integrate(u, pt, pz, quad).value, alpha) * eval(u, t);
  };
  UEstimate e;
  e.integral = gauss_kronrod(integrand, x, y, 0.1 * quad.rel_tol, quad.abs_tol,
                             quad.max_panels)
                   .value;
  e.product = integrate(u, x, y, quad).value *
              std::pow(integrate(u, x, z, quad).value, alpha);
  return e;
}

}  // namespace hardy
