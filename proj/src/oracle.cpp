#include "hardy/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <random>

#include "hardy/mesh.hpp"

namespace hardy {

namespace {

constexpr double kImprove = 1e-10;
constexpr double kNegligible = 1e-14;
const double kFactors[] = {2.0, 0.5, 1.1, 1.0 / 1.1};

double powe(double x, double e) {
  if (e == 1.0) return x;
  return x == 0.0 ? 0.0 : std::pow(x, e);
}

double mass(const Weight* V, const Abscissa& lo, const Abscissa& hi,
            const Quadrature& quad) {
  if (!before(lo, hi)) return 0.0;
  return V ? integrate(*V, lo, hi, quad).value : width(lo, hi);
}

// Phi(f) = (int_lo^hi (int_lo^t f^s V)^e U(t) dt)^o, or with `plain` just
// int f^s V. V == nullptr stands for V = 1.
struct Form {
  double s = 1, e = 1, o = 1;
  const Weight* V = nullptr;
  const Weight* U = nullptr;
  bool plain = false;
};

// Phi on a fixed grid, with every outer half-cell integral replaced by the
// integrand at the half-cell midpoint times the exact U-mass of the half.
class FastFunctional {
 public:
  FastFunctional(const Form& sp, const std::vector<Abscissa>& edges,
                 const Abscissa& hi, const Quadrature& quad)
      : sp_(sp), n_(static_cast<int>(edges.size()) - 1) {
    Vc_.resize(n_);
    P_.resize(n_);
    Um_.resize(n_);
    for (int c = 0; c < n_; ++c) {
      const Abscissa& a = edges[c];
      const Abscissa& b = edges[c + 1];
      Vc_[c] = mass(sp.V, a, b, quad);
      if (sp.plain) continue;
      const Abscissa m = lerp(a, b, 0.5);
      P_[c] = {mass(sp.V, a, lerp(a, b, 0.25), quad),
               mass(sp.V, a, lerp(a, b, 0.75), quad)};
      Um_[c] = {integrate(*sp.U, a, m, quad).value,
                integrate(*sp.U, m, b, quad).value};
    }
    if (!sp.plain && before(edges.back(), hi)) {
      Ut_ = integrate(*sp.U, edges.back(), hi, quad).value;
    }
    SU_.assign(n_ + 1, Ut_);
    for (int c = n_; c-- > 0;) SU_[c] = SU_[c + 1] + Um_[c][0] + Um_[c][1];
  }

  void load(const std::vector<double>& f) {
    fs_.resize(n_);
    for (int c = 0; c < n_; ++c) fs_[c] = powe(f[c], sp_.s);
    G_.assign(n_ + 1, 0.0);
    con_.assign(n_, 0.0);
    pre_.assign(n_ + 1, 0.0);
    recompute_from(0);
  }

  double total() const { return pre_[n_] + tail_; }
  double value(double total) const { return sp_.plain ? total : powe(total, sp_.o); }
  double value() const { return value(total()); }

  /// Total with fs[c] replaced by nfs.
  double trial(int c, double nfs) const {
    if (sp_.plain) return total() + (nfs - fs_[c]) * Vc_[c];
    const double delta = (nfs - fs_[c]) * Vc_[c];
    double t = pre_[c] + cell(G_[c], nfs, c);
    if (sp_.e == 1.0) {
      return t + (total() - pre_[c + 1]) + delta * SU_[c + 1];
    }
    for (int d = c + 1; d < n_; ++d) t += cell(G_[d] + delta, fs_[d], d);
    return t + powe(G_[n_] + delta, sp_.e) * Ut_;
  }

  void commit(int c, double nfs) {
    fs_[c] = nfs;
    recompute_from(c);
  }

 private:
  double cell(double G, double fs, int c) const {
    return powe(G + fs * P_[c][0], sp_.e) * Um_[c][0] +
           powe(G + fs * P_[c][1], sp_.e) * Um_[c][1];
  }

  void recompute_from(int c0) {
    if (sp_.plain) {
      for (int c = c0; c < n_; ++c) pre_[c + 1] = pre_[c] + fs_[c] * Vc_[c];
      tail_ = 0.0;
      return;
    }
    for (int c = c0; c < n_; ++c) {
      con_[c] = cell(G_[c], fs_[c], c);
      G_[c + 1] = G_[c] + fs_[c] * Vc_[c];
      pre_[c + 1] = pre_[c] + con_[c];
    }
    tail_ = powe(G_[n_], sp_.e) * Ut_;
  }

  Form sp_;
  int n_;
  std::vector<double> Vc_;
  std::vector<std::array<double, 2>> P_, Um_;
  double Ut_ = 0.0;
  std::vector<double> SU_;
  std::vector<double> fs_, G_, con_, pre_;
  double tail_ = 0.0;
};

// Phi evaluated with adaptive quadrature inside every cell.
double exact_functional(const Form& sp, const StepFunction& f,
                        const Abscissa& hi, const Quadrature& quad) {
  const int n = static_cast<int>(f.heights.size());
  double G = 0.0, total = 0.0;
  for (int c = 0; c < n; ++c) {
    const Abscissa& a = f.edges[c];
    const Abscissa& b = f.edges[c + 1];
    const double fs = powe(f.heights[c], sp.s);
    const double Vc = mass(sp.V, a, b, quad);
    if (sp.plain) {
      total += fs * Vc;
      continue;
    }
    if (fs == 0.0) {
      if (G > 0.0) total += powe(G, sp.e) * integrate(*sp.U, a, b, quad).value;
      continue;
    }
    const double len = width(a, b);
    auto g = [&](double theta) {
      const Abscissa t = lerp(a, b, theta);
      return powe(G + fs * mass(sp.V, a, t, quad), sp.e) * value_at(*sp.U, t) * len;
    };
    total += gauss_kronrod(g, 0.0, 1.0, quad.rel_tol, quad.abs_tol, quad.max_panels).value;
    G += fs * Vc;
  }
  if (sp.plain) return total;
  if (before(f.edges.back(), hi) && G > 0.0) {
    total += powe(G, sp.e) * integrate(*sp.U, f.edges.back(), hi, quad).value;
  }
  return powe(total, sp.o);
}

// A positive ratio of two grid functionals of the heights.
class Model {
 public:
  virtual ~Model() = default;
  virtual int size() const = 0;
  virtual void load(const std::vector<double>& h) = 0;
  virtual double ratio() const = 0;
  virtual double trial(int c, double h) const = 0;
  virtual void commit(int c, double h) = 0;
};

class StepModel : public Model {
 public:
  StepModel(const Form& num, const Form& den, const std::vector<Abscissa>& edges,
            const Abscissa& hi, const Quadrature& quad)
      : num_(num, edges, hi, quad), den_(den, edges, hi, quad),
        sn_(num.s), sd_(den.s), n_(static_cast<int>(edges.size()) - 1) {}
  int size() const override { return n_; }
  void load(const std::vector<double>& h) override {
    h_ = h;
    num_.load(h);
    den_.load(h);
  }
  double ratio() const override { return safe(num_.value(), den_.value()); }
  double trial(int c, double h) const override {
    return safe(num_.value(num_.trial(c, powe(h, sn_))),
                den_.value(den_.trial(c, powe(h, sd_))));
  }
  void commit(int c, double h) override {
    h_[c] = h;
    num_.commit(c, powe(h, sn_));
    den_.commit(c, powe(h, sd_));
  }

 private:
  static double safe(double a, double b) {
    return b > 0.0 && std::isfinite(b) ? a / b : 0.0;
  }
  FastFunctional num_, den_;
  double sn_, sd_;
  int n_;
  std::vector<double> h_;
};

struct Ascent {
  std::vector<double> h;
  double ratio = 0.0;
  long sweeps = 0;
  bool converged = false;
  std::vector<std::pair<long, double>> trajectory;
};

Ascent ascend(Model& m, std::vector<double> h, int max_sweeps) {
  Ascent out;
  m.load(h);
  double best = m.ratio();
  long moves = 0;
  out.trajectory.emplace_back(0, best);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    ++out.sweeps;
    bool improved = false;
    const double hmax = *std::max_element(h.begin(), h.end());
    for (int c = 0; c < m.size(); ++c) {
      if (!(h[c] > kNegligible * hmax)) continue;
      for (double factor : kFactors) {
        for (int rep = 0; rep < 64; ++rep) {
          const double nh = h[c] * factor;
          const double val = m.trial(c, nh);
          if (!(std::isfinite(val) && val > best * (1.0 + kImprove))) break;
          m.commit(c, nh);
          h[c] = nh;
          best = val;
          improved = true;
          out.trajectory.emplace_back(++moves, best);
        }
      }
    }
    if (!improved) {
      out.converged = true;
      break;
    }
  }
  out.h = std::move(h);
  out.ratio = best;
  return out;
}

// Starting points: f = 1, the best indicator of an aligned dyadic block of
// cells, then seeded random heights (on a random block for odd restarts).
std::vector<std::vector<double>> starts(Model& m, const OracleOptions& opts,
                                        const std::vector<double>* warm) {
  const int n = m.size();
  std::vector<std::vector<double>> out;
  out.emplace_back(n, 1.0);
  if (opts.restarts >= 2) {
    std::vector<double> best_h;
    double best = -1.0;
    for (int size = 1; size <= n; size *= 2) {
      for (int j = 0; j + size <= n; j += size) {
        std::vector<double> h(n, 0.0);
        std::fill(h.begin() + j, h.begin() + j + size, 1.0);
        m.load(h);
        const double r = m.ratio();
        if (r > best) {
          best = r;
          best_h = std::move(h);
        }
      }
    }
    out.push_back(std::move(best_h));
  }
  for (int k = 2; k < opts.restarts; ++k) {
    std::mt19937_64 rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    std::vector<double> h(n);
    for (double& x : h) x = std::exp(U(rng));
    if (k % 2 == 1 && n > 1) {
      std::uniform_int_distribution<int> I(0, n - 1);
      int lo = I(rng), hi = I(rng);
      if (lo > hi) std::swap(lo, hi);
      for (int c = 0; c < n; ++c) {
        if (c < lo || c > hi) h[c] = 0.0;
      }
    }
    out.push_back(std::move(h));
  }
  if (warm) out.push_back(*warm);
  if (static_cast<int>(out.size()) > std::max(1, opts.restarts) + (warm ? 1 : 0)) {
    out.resize(std::max(1, opts.restarts) + (warm ? 1 : 0));
  }
  return out;
}

std::vector<double> resample(const StepFunction& f, const std::vector<Abscissa>& edges) {
  const int n = static_cast<int>(edges.size()) - 1;
  std::vector<double> h(n, 0.0);
  std::size_t j = 0;
  for (int c = 0; c < n; ++c) {
    const Abscissa mid = lerp(edges[c], edges[c + 1], 0.5);
    while (j < f.heights.size() && !before(mid, f.edges[j + 1])) ++j;
    if (j < f.heights.size() && before(f.edges[j], mid)) h[c] = f.heights[j];
  }
  return h;
}

// Runs every restart (in parallel), then picks the best exactly re-evaluated
// candidate; ties go to the lowest restart index.
template <class MakeModel, class Exact>
OracleResult run_step_oracle(const MakeModel& make, const Exact& exact,
                             const std::vector<Abscissa>& edges,
                             const OracleOptions& opts) {
  std::unique_ptr<Model> probe = make();
  std::vector<double> warm;
  if (opts.warm_start) warm = resample(*opts.warm_start, edges);
  const auto st = starts(*probe, opts, opts.warm_start ? &warm : nullptr);
  const int R = static_cast<int>(st.size());
  std::vector<Ascent> res(R);
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < R; ++k) {
    std::unique_ptr<Model> m = make();
    res[k] = ascend(*m, st[k], opts.iters);
  }
  OracleResult out;
  out.grid_size = static_cast<int>(edges.size()) - 1;
  double best = -1.0;
  for (int k = 0; k < R; ++k) {
    StepFunction f{edges, res[k].h};
    double v = exact(f);
    if (opts.warm_start && k == R - 1) v = std::max(v, exact(*opts.warm_start));
    if (v > best) {
      best = v;
      out.argmax = std::move(f);
      out.iterations = res[k].sweeps;
      out.converged = res[k].converged;
      out.trajectory = res[k].trajectory;
    }
  }
  out.lower_bound = best;
  return out;
}

Form main_num(const ParamTriple& pr, const Weight& u, const Weight& v) {
  return {pr.r, pr.q / pr.r, 1.0 / pr.q, &v, &u, false};
}
Form main_den(const ParamTriple& pr, const Weight& w) {
  return {1.0, pr.p, 1.0 / pr.p, nullptr, &w, false};
}

void check_exponents(const ParamTriple& pr) {
  for (double e : {pr.p, pr.q, pr.r}) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("exponents must be positive");
  }
}

void check_step(const StepFunction& f) {
  if (f.edges.size() < 2 || f.heights.size() + 1 != f.edges.size()) {
    throw DomainError("step function needs one height per cell");
  }
  for (double h : f.heights) {
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("heights must be finite and non-negative");
  }
}

double checked_ratio(double num, double den) {
  if (!(den > 0.0)) throw DomainError("right-hand side vanishes (f = 0 a.e.)");
  if (!std::isfinite(den)) throw DomainError("right-hand side is infinite");
  return num / den;
}

}  // namespace

std::vector<Abscissa> oracle_grid(const Interval& dom, const Abscissa& lo,
                                  const Abscissa& hi,
                                  const std::vector<double>& breaks, int grid_n) {
  if (grid_n < 2) throw DomainError("grid_n must be at least 2");
  int segments = 1;
  for (double b : breaks) {
    if (b > lo.x && b < hi.x) ++segments;
  }
  const int depth = 32;
  const double smax = depth * std::log(2.0);
  const double h = 2.0 * std::asinh(smax) * segments / grid_n;
  std::vector<Abscissa> edges = mesh_nodes(dom, lo, hi, breaks, MeshLevel{h, depth}, true);
  return edges;
}

double ratio_main(const StepFunction& f, const ParamTriple& pr, const Weight& u,
                  const Weight& v, const Weight& w, const Quadrature& quad) {
  check_exponents(pr);
  check_step(f);
  const Abscissa hi = right_end(u.domain());
  return checked_ratio(exact_functional(main_num(pr, u, v), f, hi, quad),
                       exact_functional(main_den(pr, w), f, hi, quad));
}

OracleResult maximize_main(const ParamTriple& pr, const Weight& u,
                           const Weight& v, const Weight& w,
                           const Quadrature& quad, const OracleOptions& opts) {
  check_exponents(pr);
  const Interval dom = u.domain();
  const Abscissa lo = left_end(dom), hi = right_end(dom);
  const auto edges = oracle_grid(dom, lo, hi, merged_breaks({&u, &v, &w}), opts.grid_n);
  const Form num = main_num(pr, u, v), den = main_den(pr, w);
  auto make = [&]() -> std::unique_ptr<Model> {
    return std::make_unique<StepModel>(num, den, edges, hi, quad);
  };
  auto exact = [&](const StepFunction& f) {
    return exact_functional(num, f, hi, quad) / exact_functional(den, f, hi, quad);
  };
  return run_step_oracle(make, exact, edges, opts);
}

double ratio_H(const StepFunction& f, const Weight& u, const Weight& v,
               double r, double q, const Abscissa& x, const Abscissa& y,
               const Quadrature& quad) {
  check_step(f);
  (void)x;
  const Form num{r, q / r, 1.0 / q, &v, &u, false};
  const Form den{1.0, 1.0, 1.0, nullptr, nullptr, true};
  return checked_ratio(exact_functional(num, f, y, quad),
                       exact_functional(den, f, y, quad));
}

OracleResult h_functional_oracle(const Weight& u, const Weight& v, double r,
                                 double q, double x, double y,
                                 const Quadrature& quad, const OracleOptions& opts) {
  if (!(x < y)) throw DomainError("h_functional_oracle needs x < y");
  if (!(r > 0.0) || !(q > 0.0)) throw DomainError("exponents must be positive");
  const Interval dom = u.domain();
  const Abscissa ax = at(dom, x);
  const Abscissa ay = y >= dom.b ? right_end(dom) : at(dom, y);
  const auto edges = oracle_grid(dom, ax, ay, merged_breaks({&u, &v}), opts.grid_n);
  const Form num{r, q / r, 1.0 / q, &v, &u, false};
  const Form den{1.0, 1.0, 1.0, nullptr, nullptr, true};
  auto make = [&]() -> std::unique_ptr<Model> {
    return std::make_unique<StepModel>(num, den, edges, ay, quad);
  };
  auto exact = [&](const StepFunction& f) {
    return exact_functional(num, f, ay, quad) / exact_functional(den, f, ay, quad);
  };
  return run_step_oracle(make, exact, edges, opts);
}

// ---------------------------------------------------------------------------

namespace {

class SequenceModel : public Model {
 public:
  SequenceModel(DiscreteKind kind, const ParamTriple& pr, const DiscreteCoefficients& co)
      : kind_(kind), pr_(pr), co_(co) {}
  int size() const override { return static_cast<int>(co_.c.size()); }
  void load(const std::vector<double>& h) override { a_ = h; }
  double ratio() const override { return discrete_ratio(kind_, pr_, co_, a_); }
  double trial(int c, double h) const override {
    auto& a = const_cast<std::vector<double>&>(a_);
    const double old = a[c];
    a[c] = h;
    const double r = ratio();
    a[c] = old;
    return r;
  }
  void commit(int c, double h) override { a_[c] = h; }

 private:
  DiscreteKind kind_;
  ParamTriple pr_;
  const DiscreteCoefficients& co_;
  std::vector<double> a_;
};

}  // namespace

DiscreteCoefficients discrete_coefficients(DiscreteKind kind,
                                           const ParamTriple& pr,
                                           const Weight& u, const Weight& v,
                                           const DiscretizingSequence& seq,
                                           const Quadrature& quad,
                                           const RefineOptions& ropt) {
  check_exponents(pr);
  DiscreteCoefficients co;
  const int n = static_cast<int>(seq.size());
  for (int j = 1; j < n; ++j) {
    const double omega = seq.inv_W(seq.levels[j]);
    const Abscissa& a = seq.points[j - 1];
    const Abscissa& b = seq.points[j];
    if (kind == DiscreteKind::vr_inequality) {
      const double V = v_r(v, pr.r, a, b, quad).value;
      co.c.push_back(std::pow(omega, pr.r / pr.p) * powe(V, pr.r));
      const Abscissa next = j + 1 < n ? seq.points[j + 1] : right_end(seq.domain);
      co.m.push_back(integrate(u, b, next, quad).value);
    } else {
      const double H = compute_H(u, v, pr.r, pr.q, a, b, quad, ropt).value;
      co.c.push_back(std::pow(omega, pr.q / pr.p) * powe(H, pr.q));
    }
  }
  return co;
}

double discrete_ratio(DiscreteKind kind, const ParamTriple& pr,
                      const DiscreteCoefficients& co,
                      const std::vector<double>& a) {
  const std::size_t n = co.c.size();
  if (a.size() != n) throw DomainError("sequence length does not match the coefficients");
  double den = 0.0;
  for (double x : a) den += powe(x, pr.p);
  den = powe(den, 1.0 / pr.p);
  double num = 0.0;
  if (kind == DiscreteKind::vr_inequality) {
    double inner = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      inner += co.c[k] * powe(a[k], pr.r);
      num += powe(inner, pr.q / pr.r) * co.m[k];
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) num += co.c[k] * powe(a[k], pr.q);
  }
  num = powe(num, 1.0 / pr.q);
  return den > 0.0 ? num / den : 0.0;
}

double h_inequality_exact(const ParamTriple& pr, const DiscreteCoefficients& co) {
  const double p = pr.p, q = pr.q;
  if (p <= q) {
    double m = 0.0;
    for (double c : co.c) m = std::max(m, powe(c, 1.0 / q));
    return m;
  }
  double s = 0.0;
  for (double c : co.c) s += powe(c, p / (p - q));
  return powe(s, (p - q) / (p * q));
}

OracleResult discrete_hardy_oracle(DiscreteKind kind, const ParamTriple& pr,
                                   const DiscreteCoefficients& co,
                                   const OracleOptions& opts) {
  check_exponents(pr);
  if (co.c.empty()) throw DomainError("empty index range");
  if (kind == DiscreteKind::vr_inequality && co.m.size() != co.c.size()) {
    throw DomainError("vr_inequality needs one u-mass per index");
  }
  const int n = static_cast<int>(co.c.size());
  SequenceModel probe(kind, pr, co);
  OracleOptions o = opts;
  o.warm_start.reset();
  auto st = starts(probe, o, nullptr);
  // Unit vectors are the extremals for p <= min(q, r); try each of them.
  for (int k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    st.push_back(std::move(e));
  }
  const int R = static_cast<int>(st.size());
  std::vector<Ascent> res(R);
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < R; ++k) {
    SequenceModel m(kind, pr, co);
    res[k] = ascend(m, st[k], opts.iters);
  }
  OracleResult out;
  out.grid_size = n;
  double best = -1.0;
  for (int k = 0; k < R; ++k) {
    if (res[k].ratio > best) {
      best = res[k].ratio;
      out.sequence = res[k].h;
      out.iterations = res[k].sweeps;
      out.converged = res[k].converged;
      out.trajectory = res[k].trajectory;
    }
  }
  out.lower_bound = best;
  return out;
}

// ---------------------------------------------------------------------------

ReducedProblem cesaro_reduce(const CesaroProblem& cp, const Weight& u1,
                             const Weight& v1, const Weight& u2,
                             const Weight& v2) {
  for (double e : {cp.p1, cp.q1, cp.p2, cp.q2}) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("exponents must be positive");
  }
  if (cp.p2 > cp.p1) {
    throw TrivialWeights("p2 > p1 gives r > 1: only trivial weights");
  }
  ParamTriple pr{cp.q1 / cp.p1, cp.q2 / cp.p1, cp.p2 / cp.p1};
  Weight v = product(pow(v2, cp.p2), pow(v1, -cp.p2));
  return {pr, pow(u2, cp.q2), std::move(v), pow(u1, cp.q1)};
}

namespace {

Form ces_num(const CesaroProblem& cp, const Weight& V2, const Weight& U2) {
  return {cp.p2, cp.q2 / cp.p2, 1.0 / cp.q2, &V2, &U2, false};
}
Form ces_den(const CesaroProblem& cp, const Weight& V1, const Weight& U1) {
  return {cp.p1, cp.q1 / cp.p1, 1.0 / cp.q1, &V1, &U1, false};
}

}  // namespace

double ratio_cesaro(const StepFunction& f, const CesaroProblem& cp,
                    const Weight& u1, const Weight& v1, const Weight& u2,
                    const Weight& v2, const Quadrature& quad) {
  check_step(f);
  const Weight V1 = pow(v1, cp.p1), U1 = pow(u1, cp.q1);
  const Weight V2 = pow(v2, cp.p2), U2 = pow(u2, cp.q2);
  const Abscissa hi = right_end(u1.domain());
  return checked_ratio(exact_functional(ces_num(cp, V2, U2), f, hi, quad),
                       exact_functional(ces_den(cp, V1, U1), f, hi, quad));
}

OracleResult maximize_cesaro(const CesaroProblem& cp, const Weight& u1,
                             const Weight& v1, const Weight& u2,
                             const Weight& v2, const Quadrature& quad,
                             const OracleOptions& opts) {
  const Weight V1 = pow(v1, cp.p1), U1 = pow(u1, cp.q1);
  const Weight V2 = pow(v2, cp.p2), U2 = pow(u2, cp.q2);
  const Interval dom = u1.domain();
  const Abscissa lo = left_end(dom), hi = right_end(dom);
  const auto edges =
      oracle_grid(dom, lo, hi, merged_breaks({&u1, &v1, &u2, &v2}), opts.grid_n);
  const Form num = ces_num(cp, V2, U2), den = ces_den(cp, V1, U1);
  auto make = [&]() -> std::unique_ptr<Model> {
    return std::make_unique<StepModel>(num, den, edges, hi, quad);
  };
  auto exact = [&](const StepFunction& f) {
    return exact_functional(num, f, hi, quad) / exact_functional(den, f, hi, quad);
  };
  return run_step_oracle(make, exact, edges, opts);
}

}  // namespace hardy
