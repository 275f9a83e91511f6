#include "hardy/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

namespace hardy {

namespace {

constexpr double kTinyMass = 1e-280;

double log1pexp(double z) {
  if (z > 35.0) return z;
  return std::log1p(std::exp(z));
}

// Fills lT[i] = log of the tail from x_i to the table end and d[i] =
// lT[i] - lT[i+1], summing cell masses from the right.
void log_tails(const std::vector<double>& cell, double tail,
               std::vector<double>& lT, std::vector<double>& d) {
  const std::size_t n = cell.size() + 1;
  lT.assign(n, 0.0);
  d.assign(n > 0 ? n - 1 : 0, 0.0);
  lT[n - 1] = std::log(tail);
  for (std::size_t c = n - 1; c-- > 0;) {
    const double right = lT[c + 1];
    if (std::isinf(right) && right > 0) {
      lT[c] = kInf;
      d[c] = kInf;
    } else if (std::isinf(right)) {
      lT[c] = std::log(cell[c]);
      d[c] = kInf;
    } else {
      d[c] = log1pexp(std::log(cell[c]) - right);
      lT[c] = right + d[c];
    }
  }
}

// Log tail from lo given the log tail from x[0]; d receives the increment.
double extend_log(double lT0, double head, double& d) {
  if (std::isinf(head) || (std::isinf(lT0) && lT0 > 0)) {
    d = kInf;
    return kInf;
  }
  if (std::isinf(lT0)) {
    d = kInf;
    return std::log(head);
  }
  d = log1pexp(std::log(head) - lT0);
  return lT0 + d;
}

void segment_nodes(const Abscissa& s_lo, const Abscissa& s_hi,
                   const MeshLevel& level, std::vector<Abscissa>& out) {
  const double smax = level.depth_bits * std::log(2.0);
  const int K = static_cast<int>(std::ceil(std::asinh(smax) / level.h));
  const bool unbounded = std::isinf(s_hi.x);
  const double L = unbounded ? kInf : width(s_lo, s_hi);
  const double lambda = std::max(1.0, s_lo.x);
  Abscissa prev = s_lo;
  for (int k = -K; k <= K; ++k) {
    const double s = std::sinh(k * level.h);
    if (std::abs(s) > smax * (1.0 + 1e-12)) continue;
    Abscissa p;
    if (unbounded) {
      const double x = s_lo.x + lambda * std::exp(s);
      if (!(x < 1e300)) break;
      p = {x, kInf};
    } else if (s <= 0.0) {
      p = shift_right(s_lo, L / (1.0 + std::exp(-s)));
    } else {
      p = shift_left(s_hi, L / (1.0 + std::exp(s)));
    }
    if (!before(prev, p)) continue;
    if (!unbounded && !before(p, s_hi)) continue;
    out.push_back(p);
    prev = p;
  }
}

}  // namespace

std::vector<double> merged_breaks(const std::vector<const Weight*>& ws) {
  std::vector<double> out;
  for (const Weight* w : ws) {
    if (!w) continue;
    auto b = w->breakpoints();
    out.insert(out.end(), b.begin(), b.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Abscissa> mesh_nodes(const Interval& dom, const Abscissa& lo,
                                 const Abscissa& hi,
                                 const std::vector<double>& breaks,
                                 const MeshLevel& level, bool closed) {
  if (!(level.h > 0.0) || level.depth_bits < 1) {
    throw std::invalid_argument("mesh level needs h > 0 and depth_bits >= 1");
  }
  std::vector<Abscissa> ends{lo};
  for (double b : breaks) {
    if (b > lo.x && b < hi.x) ends.push_back(at(dom, b));
  }
  ends.push_back(hi);
  std::vector<Abscissa> out;
  if (closed) out.push_back(lo);
  for (std::size_t s = 0; s + 1 < ends.size(); ++s) {
    segment_nodes(ends[s], ends[s + 1], level, out);
    const bool last = s + 2 == ends.size();
    if (!last || (closed && std::isfinite(hi.x))) out.push_back(ends[s + 1]);
  }
  return out;
}

NodeTable tabulate(const Weight& u, const Weight& v, const Weight* w, double r,
                   const Abscissa& lo, const Abscissa& hi,
                   std::vector<Abscissa> nodes, const Quadrature& quad) {
  if (nodes.empty()) throw std::invalid_argument("empty mesh");
  NodeTable t;
  t.r = r;
  t.has_w = w != nullptr;
  const bool open_end = before(nodes.back(), hi);
  // Drop trailing nodes whose tail masses underflow; their logarithms would
  // carry no information.
  auto tail_of = [&](const Weight& f, const Abscissa& p) {
    return open_end ? integrate(f, p, hi, quad).value : 0.0;
  };
  while (open_end && nodes.size() > 2) {
    const double tu = tail_of(u, nodes.back());
    const double tw = w ? tail_of(*w, nodes.back()) : 1.0;
    if (tu >= kTinyMass && tw >= kTinyMass) break;
    nodes.pop_back();
  }
  t.x = std::move(nodes);
  const int n = t.n();
  const std::optional<Weight> vr =
      r < 1.0 ? std::optional<Weight>(pow(v, 1.0 / (1.0 - r))) : std::nullopt;

  t.mu.resize(n - 1);
  t.mw.resize(n - 1);
  t.mv.resize(n - 1);
  t.sv.resize(n - 1);
  for (int c = 0; c + 1 < n; ++c) {
    const Abscissa& a = t.x[c];
    const Abscissa& b = t.x[c + 1];
    t.mu[c] = integrate(u, a, b, quad).value;
    if (w) t.mw[c] = integrate(*w, a, b, quad).value;
    if (vr) {
      t.mv[c] = integrate(*vr, a, b, quad).value;
    } else {
      t.sv[c] = ess_sup(v, a, b);
    }
  }
  t.rl.resize(n);
  t.ll.resize(n);
  for (int i = 0; i < n; ++i) {
    t.rl[i] = right_limit(v, t.x[i]);
    t.ll[i] = left_limit(v, t.x[i]);
  }
  const bool open_start = before(lo, t.x.front());
  if (open_start) {
    t.head_mu = integrate(u, lo, t.x.front(), quad).value;
    if (w) t.head_mw = integrate(*w, lo, t.x.front(), quad).value;
    if (vr) {
      t.head_mv = integrate(*vr, lo, t.x.front(), quad).value;
    } else {
      t.head_sv = ess_sup(v, lo, t.x.front());
    }
  }
  if (open_end) {
    t.tail_mu = integrate(u, t.x.back(), hi, quad).value;
    if (w) t.tail_mw = integrate(*w, t.x.back(), hi, quad).value;
    if (vr) {
      t.tail_mv = integrate(*vr, t.x.back(), hi, quad).value;
    } else {
      t.tail_sv = ess_sup(v, t.x.back(), hi);
    }
  }
  log_tails(t.mu, t.tail_mu, t.lU, t.dU);
  t.lUa = extend_log(t.lU.front(), t.head_mu, t.dUa);
  if (w) {
    if (std::isinf(t.tail_mw)) {
      throw HypothesisViolation(
          "W(x) is infinite at interior points: w is not integrable near b");
    }
    log_tails(t.mw, t.tail_mw, t.lW, t.dW);
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(t.lW[i])) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", t.x[i].x);
        throw HypothesisViolation(std::string("W(") + buf +
                                  ") is not in (0, inf)");
      }
    }
    t.lWa = extend_log(t.lW.front(), t.head_mw, t.dWa);
  }
  return t;
}

}  // namespace hardy
