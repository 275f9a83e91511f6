#include "hardy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

void Quadrature::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (max_panels < 1) throw std::invalid_argument("max_panels must be >= 1");
  if (!(divergence_threshold > 1.0 / rel_tol)) {
    throw std::invalid_argument("divergence_threshold must exceed 1/rel_tol");
  }
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  return {lo, hi, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult gauss_kronrod(const std::function<double(double)>& f, double lo,
                         double hi, double rel_tol, double abs_tol,
                         int max_panels) {
  QuadResult out;
  if (!(hi > lo)) return out;
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, lo, hi);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int panels = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (panels >= max_panels || !std::isfinite(total)) {
      out.converged = false;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval cannot be split further in double precision.
      heap.push(worst);
      out.converged = false;
      break;
    }
    Panel left = gk15(f, worst.lo, mid);
    Panel right = gk15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    panels += 1;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  double sum = 0.0, esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  out.panels = panels;
  return out;
}

ExtValue integrate_toward_end(const std::function<double(double)>& g,
                              double half, double min_d,
                              const Quadrature& quad) {
  double sum = 0.0;
  double err = 0.0;
  double prev = -1.0;
  double ratio = 0.0;
  int flat_runs = 0;
  int budget = quad.max_panels;
  double hi = half;
  for (int k = 0;; ++k) {
    const double lo = 0.5 * hi;
    if (lo < min_d || !(lo > 0.0)) {
      // Bottom of the representable range: extrapolate the remaining tail.
      if (flat_runs >= 2) return ExtValue::infinite();
      if (prev > 0.0 && ratio < 1.0) {
        const double tail = prev * ratio / (1.0 - ratio);
        sum += tail;
        err += tail;
      }
      break;
    }
    QuadResult r = gauss_kronrod(g, lo, hi, 0.1 * quad.rel_tol,
                                 0.1 * quad.abs_tol, std::max(budget, 1));
    budget -= r.panels;
    if (!std::isfinite(r.value)) return ExtValue::infinite();
    if (!r.converged && budget <= 0) {
      throw QuadratureError("panel budget exhausted near a singular endpoint");
    }
    sum += r.value;
    err += r.error;
    if (sum > quad.divergence_threshold) return ExtValue::infinite();
    if (prev > 0.0) {
      ratio = r.value / prev;
      if (k >= 3 && ratio >= 1.0 - 1e-9) {
        if (++flat_runs >= 3) return ExtValue::infinite();
      } else {
        flat_runs = 0;
      }
    }
    if (r.value == 0.0 && k >= 2) break;
    if (k >= 2 && ratio < 1.0) {
      const double tail = r.value * ratio / (1.0 - ratio);
      if (tail <= quad.rel_tol * std::abs(sum) + quad.abs_tol) {
        sum += tail;
        err += tail;
        break;
      }
    }
    prev = r.value;
    hi = lo;
  }
  return {sum, err};
}

}  // namespace hardy
