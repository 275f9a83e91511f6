#include "hardy/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <utility>

#include "hardy/mesh.hpp"

namespace hardy {

namespace {

constexpr double kNeg = -std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNeg; }
double ladd(double a, double b) {
  if (a == kNeg || b == kNeg) return kNeg;
  return a + b;
}
double lmul(double k, double a) { return a == kNeg ? kNeg : k * a; }

struct LogSum {
  double m = kNeg;
  double s = 0.0;
  void push(double l) {
    if (l == kNeg || m == kInf) return;
    if (l == kInf) {
      m = kInf;
      return;
    }
    if (l <= m) {
      s += std::exp(l - m);
    } else {
      s = s * std::exp(m - l) + 1.0;
      m = l;
    }
  }
  double value() const {
    if (m == kNeg || m == kInf) return m;
    return m + std::log(s);
  }
};

double from_log(double l) { return l == kNeg ? 0.0 : std::exp(l); }

// Node tables of one weight triple, cached per mesh level.
class Tables {
 public:
  Tables(const Weight& u, const Weight& v, const Weight* w, double r,
         Abscissa lo, Abscissa hi, bool closed, const Quadrature& quad)
      : u_(u), v_(v), w_(w), r_(r), lo_(lo), hi_(hi), closed_(closed),
        quad_(quad), breaks_(merged_breaks({&u, &v, w})) {}

  const NodeTable& at(double h, int depth) {
    const auto key = std::make_pair(static_cast<int>(std::lround(1.0 / h)), depth);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    const Interval dom = u_.domain();
    auto nodes = mesh_nodes(dom, lo_, hi_, breaks_, MeshLevel{h, depth}, closed_);
    auto t = std::make_unique<NodeTable>(
        tabulate(u_, v_, w_, r_, lo_, hi_, std::move(nodes), quad_));
    return *cache_.emplace(key, std::move(t)).first->second;
  }

 private:
  const Weight& u_;
  const Weight& v_;
  const Weight* w_;
  double r_;
  Abscissa lo_, hi_;
  bool closed_;
  Quadrature quad_;
  std::vector<double> breaks_;
  std::map<std::pair<int, int>, std::unique_ptr<NodeTable>> cache_;
};

using LogKernel = std::function<double(const NodeTable&)>;

// Relative size of a change, guarding against zero values.
double rel(double change, double value) {
  return value > 0.0 ? change / value : (change > 0.0 ? kInf : 0.0);
}

// Depth refinement at the coarse step, then step refinement at the settled
// depth. Divergence is declared when three successive depth doublings each
// grow the value by more than 1.5, when the value passes the divergence
// threshold, or when from depth 128 on the increments stop shrinking while
// still significant.
Evaluation refine(Tables& tabs, const LogKernel& f, bool cubic,
                  const Quadrature& quad, const RefineOptions& opt,
                  const std::string& name) {
  Evaluation out;
  std::vector<double> vals;
  std::vector<double> incs;
  int up = 0;
  int depth = opt.depths.front();
  bool settled = false;
  auto diverged = [&](const std::string& why) {
    out.value = ExtValue::infinite();
    out.note = name + " diverges (" + why + ")";
    return out;
  };
  for (int D : opt.depths) {
    depth = D;
    const double v = from_log(f(tabs.at(opt.h0, D)));
    if (!(v <= quad.divergence_threshold)) {
      return diverged(std::isinf(v) ? "infinite at depth " + std::to_string(D)
                                    : "exceeds threshold at depth " +
                                          std::to_string(D));
    }
    if (!vals.empty()) {
      const double prev = vals.back();
      up = v > 1.5 * prev ? up + 1 : 0;
      if (up >= 3) return diverged("growth under depth refinement");
      const double inc = v - prev;
      if (D >= 128 && incs.size() >= 2) {
        const double i1 = incs.back();
        if (rel(inc, v) > 1e-3 && rel(i1, prev) > 1e-3 && inc >= i1 &&
            i1 >= incs[incs.size() - 2]) {
          return diverged("increments do not shrink");
        }
      }
      incs.push_back(inc);
      if (D >= 32 && rel(std::abs(inc), v) <= opt.depth_tol) {
        vals.push_back(v);
        settled = true;
        break;
      }
    }
    vals.push_back(v);
  }
  double value = vals.back();
  double err = incs.empty() ? 0.0 : std::abs(incs.back());
  if (!settled && rel(err, value) > opt.depth_tol) {
    out.note = name + ": depth refinement not settled (relative change " +
               fmt(rel(err, value)) + ")";
  }
  double herr = 0.0;
  int nodes = tabs.at(opt.h0, depth).n();
  for (double h = opt.h0 / 2; h >= opt.h_min * (1 - 1e-12); h /= 2) {
    if (cubic && 2 * nodes > opt.cubic_node_cap) break;
    const NodeTable& t = tabs.at(h, depth);
    nodes = t.n();
    const double v = from_log(f(t));
    if (!(v <= quad.divergence_threshold)) {
      return diverged("exceeds threshold under step refinement");
    }
    herr = std::abs(v - value);
    value = v;
    if (rel(herr, value) <= opt.depth_tol) break;
  }
  out.value = {value, err + herr};
  return out;
}

void require(bool ok, const std::string& name, const char* regime) {
  if (!ok) throw RegimeError(name + " is defined only for " + regime);
}

LogKernel continuous_kernel(const std::string& name, const ParamTriple& pr,
                            kernels::Exec ex, bool& cubic) {
  const double p = pr.p, q = pr.q, r = pr.r;
  cubic = false;
  if (name == "C1") return [=](const NodeTable& t) { return kernels::c1(t, p, q, ex); };
  if (name == "C2") {
    require(q < 1, name, "q < 1");
    return [=](const NodeTable& t) { return kernels::c2(t, p, q, ex); };
  }
  if (name == "C3") {
    require(r < p, name, "r < p");
    return [=](const NodeTable& t) { return kernels::c3(t, p, q, ex); };
  }
  if (name == "C4") {
    require(q < p, name, "q < p");
    return [=](const NodeTable& t) { return kernels::c4(t, p, q, ex); };
  }
  if (name == "C5") {
    require(q < 1 && q < p, name, "q < 1 and q < p");
    cubic = true;
    return [=](const NodeTable& t) { return kernels::c5(t, p, q, ex); };
  }
  if (name == "C6") {
    require(r < p && q < p, name, "r < p and q < p");
    return [=](const NodeTable& t) { return kernels::c6(t, p, q, ex); };
  }
  if (name == "C7") {
    require(q < p, name, "q < p");
    cubic = true;
    return [=](const NodeTable& t) { return kernels::c7(t, p, q, ex); };
  }
  if (name == "SC5" || name == "SC6") {
    require(r <= q && q < p && p < 1, name, "0 < r <= q < p < 1");
    if (name == "SC6") {
      return [=](const NodeTable& t) { return kernels::script_c6(t, p, q, ex); };
    }
    return [=](const NodeTable& t) {
      const auto two = kernels::script_c5(t, p, q, ex);
      return kernels::lse(two.first, two.second);
    };
  }
  throw DomainError("unknown constant '" + name + "'");
}

Evaluation eval_continuous(Tables& tabs, const std::string& name,
                           const ParamTriple& pr, const Weight& w,
                           const Quadrature& quad, const RefineOptions& opt) {
  bool cubic = false;
  const LogKernel f = continuous_kernel(name, pr, opt.exec, cubic);
  Evaluation e = refine(tabs, f, cubic, quad, opt, name);
  if (name == "SC5" && tail_W(w, left_end(w.domain()), quad).is_infinite()) {
    const std::string d = "SC5: W(a) = inf, the W(a)^(-1/p) term is dropped";
    e.note = e.note.empty() ? d : e.note + "; " + d;
  }
  return e;
}

RefineOptions h_options(const RefineOptions& opt) {
  RefineOptions o = opt;
  o.h0 = 0.25;
  o.depths.clear();
  for (int d : opt.depths) {
    if (d <= 64) o.depths.push_back(d);
  }
  if (o.depths.empty()) o.depths = {8, 16, 32, 64};
  o.depth_tol = 1e-7;
  return o;
}

ExtValue H_branch(const Weight& u, const Weight& v, double r, double q,
                  const Abscissa& x, const Abscissa& y, bool sup_form,
                  const Quadrature& quad, const RefineOptions& opt) {
  if (!before(x, y)) throw DomainError("compute_H needs x < y");
  if (!sup_form && !(q < 1.0)) {
    throw RegimeError("the integral form of H needs q < 1");
  }
  Tables tabs(u, v, nullptr, r, x, y, true, quad);
  const LogKernel f = sup_form
                          ? LogKernel([q](const NodeTable& t) { return kernels::h_sup(t, q); })
                          : LogKernel([q](const NodeTable& t) { return kernels::h_int(t, q); });
  return refine(tabs, f, false, quad, h_options(opt), "H").value;
}

bool is_B(const std::string& n) { return !n.empty() && n[0] == 'B'; }

}  // namespace

void ParamTriple::validate() const {
  for (double e : {p, q, r}) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw DomainError("exponents must be positive and finite");
    }
  }
  if (r > 1.0) {
    throw TrivialWeights("r > 1: the inequality holds only for trivial weights");
  }
}

const char* case_name(CaseId c) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
  return names[static_cast<int>(c)];
}

CaseId case_from_name(const std::string& s) {
  for (int i = 0; i < 7; ++i) {
    if (s == case_name(static_cast<CaseId>(i))) return static_cast<CaseId>(i);
  }
  throw DomainError("unknown case '" + s + "'");
}

CaseId classify(const ParamTriple& pr) {
  pr.validate();
  const double p = pr.p, q = pr.q, r = pr.r;
  if (p <= r) {
    if (q < p) return CaseId::V;
    return q >= 1.0 ? CaseId::I : CaseId::II;
  }
  if (p <= q) return q >= 1.0 ? CaseId::III : CaseId::IV;
  return q >= 1.0 ? CaseId::VII : CaseId::VI;
}

std::vector<std::string> case_constants(CaseId c) {
  switch (c) {
    case CaseId::I: return {"C1"};
    case CaseId::II: return {"C2"};
    case CaseId::III: return {"C1", "C3"};
    case CaseId::IV: return {"C2", "C3"};
    case CaseId::V: return {"C4", "C5"};
    case CaseId::VI: return {"C1", "C5", "C6"};
    case CaseId::VII: return {"C1", "C6", "C7"};
  }
  return {};
}

std::vector<std::string> case_discrete_constants(CaseId c) {
  switch (c) {
    case CaseId::I: return {"A1", "B1"};
    case CaseId::II: return {"A1", "B2"};
    case CaseId::III: return {"A2", "B1"};
    case CaseId::IV: return {"A2", "B2"};
    case CaseId::V: return {"A3", "B3"};
    case CaseId::VI: return {"A4", "B3"};
    case CaseId::VII: return {"A4", "B4"};
  }
  return {};
}

Evaluation compute_C(const std::string& name, const ParamTriple& pr,
                     const Weight& u, const Weight& v, const Weight& w,
                     const Quadrature& quad, const RefineOptions& opt) {
  pr.validate();
  if (name.rfind("SC", 0) == 0) {
    throw DomainError("use compute_script_C for '" + name + "'");
  }
  const Interval dom = u.domain();
  Tables tabs(u, v, &w, pr.r, left_end(dom), right_end(dom), false, quad);
  return eval_continuous(tabs, name, pr, w, quad, opt);
}

Evaluation compute_script_C(const std::string& name, const ParamTriple& pr,
                            const Weight& u, const Weight& v, const Weight& w,
                            const Quadrature& quad, const RefineOptions& opt) {
  pr.validate();
  if (name != "SC5" && name != "SC6") {
    throw DomainError("unknown constant '" + name + "'");
  }
  const Interval dom = u.domain();
  Tables tabs(u, v, &w, pr.r, left_end(dom), right_end(dom), false, quad);
  return eval_continuous(tabs, name, pr, w, quad, opt);
}

ExtValue compute_H(const Weight& u, const Weight& v, double r, double q,
                   const Abscissa& x, const Abscissa& y, const Quadrature& quad,
                   const RefineOptions& opt) {
  if (!(r > 0.0 && r <= 1.0) || !(q > 0.0)) {
    throw DomainError("compute_H needs 0 < r <= 1 and q > 0");
  }
  return H_branch(u, v, r, q, x, y, q >= 1.0, quad, opt);
}

ExtValue compute_H(const Weight& u, const Weight& v, double r, double q,
                   double x, double y, const Quadrature& quad,
                   const RefineOptions& opt) {
  const Interval dom = u.domain();
  return compute_H(u, v, r, q, at(dom, x), y >= dom.b ? right_end(dom) : at(dom, y),
                   quad, opt);
}

Evaluation compute_discrete(const std::string& name, const ParamTriple& pr,
                            const Weight& u, const Weight& v, const Weight& w,
                            const DiscretizingSequence& seq,
                            const Quadrature& quad, const RefineOptions& opt) {
  pr.validate();
  (void)w;
  const double p = pr.p, q = pr.q, r = pr.r;
  if (name == "A2" || name == "A4") require(r < p, name, "r < p");
  if (name == "A3" || name == "A4" || name == "B3" || name == "B4") {
    require(q < p, name, "q < p");
  }
  if (name == "B2" || name == "B3") require(q < 1, name, "q < 1");
  static const char* known[] = {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4"};
  if (std::find_if(std::begin(known), std::end(known),
                   [&](const char* k) { return name == k; }) == std::end(known)) {
    throw DomainError("unknown constant '" + name + "'");
  }
  const int n = static_cast<int>(seq.size());
  const Abscissa b = right_end(seq.domain);
  // Per-index data, filled lazily; index j stands for level seq.levels[j].
  std::vector<double> lomega(n), lV(n, kNeg), lU(n, kNeg), lm(n, kNeg), lH(n, kNeg);
  std::vector<bool> have(n, false);
  const bool sup_form = name == "B1" || name == "B4";
  auto fill = [&](int j) {
    if (have[j]) return;
    have[j] = true;
    lomega[j] = seq.levels[j] * kLn2 - std::log(seq.W0);
    lU[j] = safe_log(integrate(u, seq.points[j], b, quad).value);
    if (j + 1 < n) lm[j] = safe_log(integrate(u, seq.points[j], seq.points[j + 1], quad).value);
    if (j >= 1) {
      if (is_B(name)) {
        lH[j] = safe_log(H_branch(u, v, r, q, seq.points[j - 1], seq.points[j],
                                  sup_form, quad, opt).value);
      } else {
        lV[j] = safe_log(v_r(v, r, seq.points[j - 1], seq.points[j], quad).value);
      }
    }
  };
  // Log value over the index range (j0, j1].
  auto evaluate = [&](int j0, int j1) -> double {
    for (int j = j0; j <= j1; ++j) fill(j);
    if (name == "A1" || name == "B1" || name == "B2") {
      double m = kNeg;
      for (int j = j0 + 1; j <= j1; ++j) {
        const double core = name == "A1" ? ladd(lV[j], lmul(1.0 / q, lU[j])) : lH[j];
        m = std::max(m, ladd(lomega[j] / p, core));
      }
      return m;
    }
    if (name == "A2") {
      LogSum acc;
      double m = kNeg;
      for (int j = j0 + 1; j <= j1; ++j) {
        acc.push(ladd(lomega[j] * r / (p - r), lmul(p * r / (p - r), lV[j])));
        m = std::max(m, ladd(lmul(1.0 / q, lU[j]), lmul((p - r) / (p * r), acc.value())));
      }
      return m;
    }
    if (name == "A3" || name == "A4") {
      LogSum inner, outer;
      double isup = kNeg;
      for (int j = j0 + 1; j + 1 <= j1; ++j) {
        double core;
        if (name == "A3") {
          isup = std::max(isup, ladd(lomega[j] * q / (p - q),
                                     lmul(p * q / (p - q), lV[j])));
          core = isup;
        } else {
          inner.push(ladd(lomega[j] * r / (p - r), lmul(p * r / (p - r), lV[j])));
          core = lmul(q * (p - r) / (r * (p - q)), inner.value());
        }
        outer.push(ladd(ladd(lm[j], lmul(q / (p - q), lU[j])), core));
      }
      return lmul((p - q) / (p * q), outer.value());
    }
    // B3, B4
    LogSum acc;
    for (int j = j0 + 1; j <= j1; ++j) {
      acc.push(ladd(lomega[j] * q / (p - q), lmul(p * q / (p - q), lH[j])));
    }
    return lmul((p - q) / (p * q), acc.value());
  };

  Evaluation out;
  const int first = seq.first_level();
  const int last = seq.last_level();
  auto index = [&](int level) { return level - first; };
  std::vector<double> vals, incs;
  int up = 0;
  bool saturated = false;
  for (int K = 8; !saturated; K *= 2) {
    const int lo_level = seq.n_finite ? first : std::max(first, -K);
    const int hi_level = std::min(last, (seq.n_finite ? first : 0) + K);
    saturated = lo_level == first && hi_level == last;
    const int j0 = index(lo_level), j1 = index(hi_level);
    const bool needs_next = name == "A3" || name == "A4";
    if (j1 - j0 < (needs_next ? 2 : 1)) {
      vals.push_back(0.0);
      out.note = name + ": empty-range";
      continue;
    }
    const double v = from_log(evaluate(j0, j1));
    if (!(v <= quad.divergence_threshold)) {
      out.value = ExtValue::infinite();
      out.note = name + " diverges (exceeds threshold with " +
                 std::to_string(j1 - j0) + " levels)";
      return out;
    }
    if (!vals.empty()) {
      const double prev = vals.back();
      up = v > 1.5 * prev && prev > 0.0 ? up + 1 : 0;
      const double inc = v - prev;
      if (up >= 3) {
        out.value = ExtValue::infinite();
        out.note = name + " diverges (growth under truncation widening)";
        return out;
      }
      if (K >= 32 && incs.size() >= 2 && rel(inc, v) > 1e-3 &&
          rel(incs.back(), prev) > 1e-3 && inc >= incs.back() &&
          incs.back() >= incs[incs.size() - 2]) {
        out.value = ExtValue::infinite();
        out.note = name + " diverges (increments do not shrink)";
        return out;
      }
      incs.push_back(inc);
    }
    vals.push_back(v);
  }
  const double err = incs.empty() ? 0.0 : std::abs(incs.back());
  out.value = {vals.back(), err};
  if (vals.back() > 0.0 && !out.note.empty() && out.note.find("empty-range") != std::string::npos) {
    out.note.clear();
  }
  if (rel(err, vals.back()) > 1e-6 && out.note.empty()) {
    out.note = name + ": truncation change " + fmt(rel(err, vals.back())) +
               " at the widest index range";
  }
  return out;
}

ConditionReport decide(const ParamTriple& pr, const Weight& u, const Weight& v,
                       const Weight& w, const Quadrature& quad,
                       const RefineOptions& opt) {
  quad.validate();
  ConditionReport rep;
  rep.case_id = classify(pr);
  const Interval dom = u.domain();
  if (!(v.domain() == dom) || !(w.domain() == dom)) {
    throw DomainError("u, v and w must share one interval");
  }
  Tables tabs(u, v, &w, pr.r, left_end(dom), right_end(dom), false, quad);

  auto note = [&](const Evaluation& e) {
    if (!e.note.empty()) rep.diagnostics.push_back(e.note);
  };
  double est = 0.0, est_err = 0.0;
  for (const auto& name : case_constants(rep.case_id)) {
    const Evaluation e = eval_continuous(tabs, name, pr, w, quad, opt);
    note(e);
    rep.continuous[name] = e.value;
    if (e.value.is_infinite()) rep.diverged.push_back(name);
    est += e.value.value;
    est_err += e.value.error_estimate;
  }
  rep.estimate = std::isinf(est) ? ExtValue::infinite() : ExtValue{est, est_err};
  if (rep.case_id == CaseId::VI && pr.r <= pr.q && pr.p < 1.0) {
    for (const char* name : {"SC5", "SC6"}) {
      const Evaluation e = eval_continuous(tabs, name, pr, w, quad, opt);
      note(e);
      rep.continuous[name] = e.value;
    }
  }

  const DiscretizingSequence seq =
      build_discretizing_sequence(w, quad, opt.k_min, opt.k_max);
  for (const auto& s : seq.notes) rep.diagnostics.push_back("discretization: " + s);
  if (!seq.n_finite) {
    rep.diagnostics.push_back("W(a) = inf: levels truncated below k = " +
                              std::to_string(seq.first_level()));
  }
  double dest = 0.0, dest_err = 0.0;
  for (const auto& name : case_discrete_constants(rep.case_id)) {
    const Evaluation e = compute_discrete(name, pr, u, v, w, seq, quad, opt);
    note(e);
    rep.discrete[name] = e.value;
    dest += e.value.value;
    dest_err += e.value.error_estimate;
  }
  rep.discrete_estimate =
      std::isinf(dest) ? ExtValue::infinite() : ExtValue{dest, dest_err};
  rep.holds = rep.estimate.is_finite();
  return rep;
}

}  // namespace hardy
