#include "hardy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardy::kernels {

namespace {

constexpr double kNeg = -std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

// Product in the log domain with the convention 0 * inf = 0.
inline double add(double a, double b) {
  if (a == kNeg || b == kNeg) return kNeg;
  return a + b;
}

// Scaling of a log value by a positive factor; keeps log 0 at log 0.
inline double mul(double k, double a) { return a == kNeg ? kNeg : k * a; }

inline double lavg(double a, double b) { return add(lse(a, b), -kLn2); }

// Streaming log-sum-exp.
struct LogAcc {
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

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : kNeg; }


// Stieltjes masses of U^{k-1} u and W^{k-1} w over the interior cells.
std::vector<double> u_masses(const NodeTable& t, double k) {
  std::vector<double> out(t.n() - 1);
  for (int c = 0; c + 1 < t.n(); ++c)
    out[c] = log_mass_pow(t.lU[c], t.lU[c + 1], t.dU[c], k);
  return out;
}

std::vector<double> w_masses(const NodeTable& t, double k) {
  std::vector<double> out(t.n() - 1);
  for (int c = 0; c + 1 < t.n(); ++c)
    out[c] = log_mass_pow(t.lW[c], t.lW[c + 1], t.dW[c], k);
  return out;
}

// Outer integral sum over interior cells of mass_c * avg(S_c, S_{c+1}).
double outer(const std::vector<double>& lmass, const std::vector<double>& S) {
  LogAcc acc;
  for (std::size_t c = 0; c < lmass.size(); ++c)
    acc.push(add(lmass[c], lavg(S[c], S[c + 1])));
  return acc.value();
}

std::vector<double> log_cells(const std::vector<double>& m) {
  std::vector<double> out(m.size());
  for (std::size_t c = 0; c < m.size(); ++c) out[c] = safe_log(m[c]);
  return out;
}

double inner_u_row(const NodeTable& t, double alpha,
                   const std::vector<double>& lE, int i,
                   std::vector<double>& row) {
  const int n = t.n();
  v_row(t, i, row);
  LogAcc acc;
  for (int c = i; c + 1 < n; ++c)
    acc.push(add(lE[c], lavg(mul(alpha, row[c]), mul(alpha, row[c + 1]))));
  if (t.tail_mu > 0.0) {
    const double ltail = mul(alpha + 1.0, t.lU[n - 1]) - std::log(alpha + 1.0);
    acc.push(add(ltail, mul(alpha, row[n - 1])));
  }
  return acc.value();
}

}  // namespace

double lse(double a, double b) {
  if (a == kNeg) return b;
  if (b == kNeg) return a;
  if (a == kInf || b == kInf) return kInf;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_mass_pow(double la_l, double la_r, double d, double k) {
  if (d == 0.0 || la_l == kNeg) return kNeg;
  if (k > 0.0) {
    if (la_l == kInf) return kInf;
    return k * la_l + std::log(-std::expm1(-k * d)) - std::log(k);
  }
  if (k < 0.0) {
    if (la_r == kNeg) return kInf;
    return k * la_r + std::log(-std::expm1(k * d)) - std::log(-k);
  }
  return std::log(d);
}

void v_row(const NodeTable& t, int i, std::vector<double>& out) {
  const int n = t.n();
  out.assign(n, kNeg);
  if (t.r < 1.0) {
    const double e = (1.0 - t.r) / t.r;
    double s = 0.0;
    for (int c = i + 1; c < n; ++c) {
      s += t.mv[c - 1];
      out[c] = mul(e, safe_log(s));
    }
  } else {
    out[i] = safe_log(t.rl[i]);
    double m = 0.0;
    for (int c = i + 1; c < n; ++c) {
      m = std::max(m, t.sv[c - 1]);
      out[c] = safe_log(m);
    }
  }
}

void v_col(const NodeTable& t, int j, std::vector<double>& out) {
  out.assign(j + 1, kNeg);
  if (t.r < 1.0) {
    const double e = (1.0 - t.r) / t.r;
    double s = 0.0;
    for (int c = j - 1; c >= 0; --c) {
      s += t.mv[c];
      out[c] = mul(e, safe_log(s));
    }
  } else {
    out[j] = safe_log(t.ll[j]);
    double m = 0.0;
    for (int c = j - 1; c >= 0; --c) {
      m = std::max(m, t.sv[c]);
      out[c] = safe_log(m);
    }
  }
}

std::vector<double> inner_u(const NodeTable& t, double alpha, Exec ex) {
  const int n = t.n();
  const std::vector<double> lE = u_masses(t, alpha + 1.0);
  std::vector<double> out(n);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> row;
#pragma omp for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) out[i] = inner_u_row(t, alpha, lE, i, row);
  }
  return out;
}

std::vector<double> inner_w(const NodeTable& t, double beta, double gamma,
                            Exec ex) {
  const int n = t.n();
  const std::vector<double> lF = w_masses(t, 1.0 - beta);
  double lFh = kNeg;
  if (t.head_mw > 0.0) {
    lFh = log_mass_pow(t.lWa, t.lW[0], t.dWa, 1.0 - beta);
  }
  std::vector<double> out(n);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> col;
#pragma omp for schedule(dynamic, 8)
    for (int j = 0; j < n; ++j) {
      v_col(t, j, col);
      LogAcc acc;
      acc.push(add(lFh, mul(gamma, col[0])));
      for (int c = 0; c < j; ++c)
        acc.push(add(lF[c], lavg(mul(gamma, col[c]), mul(gamma, col[c + 1]))));
      out[j] = acc.value();
    }
  }
  return out;
}

double c1(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  std::vector<double> best(n, kNeg);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> row;
#pragma omp for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
      v_row(t, i, row);
      double m = kNeg;
      for (int c = i; c < n; ++c) m = std::max(m, add(mul(1.0 / q, t.lU[c]), row[c]));
      best[i] = add(-t.lW[i] / p, m);
    }
  }
  return *std::max_element(best.begin(), best.end());
}

double c2(const NodeTable& t, double p, double q, Exec ex) {
  const std::vector<double> L = inner_u(t, q / (1.0 - q), ex);
  double best = kNeg;
  for (int i = 0; i < t.n(); ++i)
    best = std::max(best, add(-t.lW[i] / p, mul((1.0 - q) / q, L[i])));
  return best;
}

double c3(const NodeTable& t, double p, double q, Exec ex) {
  const double r = t.r;
  const std::vector<double> L = inner_w(t, p / (p - r), p * r / (p - r), ex);
  double best = kNeg;
  for (int j = 0; j < t.n(); ++j)
    best = std::max(best,
                    add(mul(1.0 / q, t.lU[j]), mul((p - r) / (p * r), L[j])));
  return best;
}

double c4(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  const double alpha = q / (p - q);
  std::vector<double> S(n, kNeg);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> col;
#pragma omp for schedule(dynamic, 8)
    for (int j = 0; j < n; ++j) {
      v_col(t, j, col);
      double m = kNeg;
      for (int i = 0; i <= j; ++i)
        m = std::max(m, add(-alpha * t.lW[i], mul(p * alpha, col[i])));
      S[j] = m;
    }
  }
  return mul((p - q) / (p * q), outer(u_masses(t, alpha + 1.0), S));
}

double c5(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  const double alpha = q / (1.0 - q);
  const double e1 = p / (p - q);
  const double e2 = p * (1.0 - q) / (p - q);
  // Averaged V^alpha over cell c seen from node i, for c in [i, n-2].
  std::vector<std::vector<double>> va(n);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> row;
#pragma omp for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
      v_row(t, i, row);
      va[i].assign(n, kNeg);
      for (int c = i; c + 1 < n; ++c)
        va[i][c] = lavg(mul(alpha, row[c]), mul(alpha, row[c + 1]));
    }
  }
  std::vector<double> S(n, kNeg);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> lT;
#pragma omp for schedule(dynamic, 4)
    for (int j = 1; j < n; ++j) {
      // lT[c] = log int_{cell c} (int_t^{x_j} u)^alpha u dt.
      lT.assign(j, kNeg);
      double D = 0.0;
      for (int c = j - 1; c >= 0; --c) {
        const double d = D > 0.0 ? std::log1p(t.mu[c] / D) : kInf;
        const double Dn = D + t.mu[c];
        lT[c] = log_mass_pow(safe_log(Dn), safe_log(D), d, alpha + 1.0);
        D = Dn;
      }
      double m = kNeg;
      for (int i = 0; i < j; ++i) {
        LogAcc acc;
        for (int c = i; c < j; ++c) acc.push(add(lT[c], va[i][c]));
        m = std::max(m, add(-e1 * t.lW[i], mul(e2, acc.value())));
      }
      S[j] = m;
    }
  }
  return mul((p - q) / (p * q), outer(log_cells(t.mw), S));
}

double c6(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  const double r = t.r;
  const double alpha = q / (p - q);
  const double e = q * (p - r) / (r * (p - q));
  const std::vector<double> L3 = inner_w(t, p / (p - r), p * r / (p - r), ex);
  const std::vector<double> lE = u_masses(t, alpha + 1.0);
  std::vector<double> S(n, kNeg);
#pragma omp parallel for schedule(dynamic, 8) if (ex == Exec::parallel)
  for (int j = 1; j < n; ++j) {
    LogAcc K;
    double m = kNeg;
    for (int i = j - 1; i >= 0; --i) {
      K.push(lE[i]);
      m = std::max(m, add(add(-t.lW[i], K.value()), mul(e, L3[i])));
    }
    S[j] = m;
  }
  return mul((p - q) / (p * q), outer(log_cells(t.mw), S));
}

double c7(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  const double a = p / (p - q);
  const double bb = p * q / (p - q);
  std::vector<std::vector<double>> vb(n);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> row;
#pragma omp for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
      v_row(t, i, row);
      vb[i].resize(n);
      for (int c = i; c < n; ++c) vb[i][c] = mul(bb, row[c]);
    }
  }
  std::vector<double> S(n, kNeg);
#pragma omp parallel if (ex == Exec::parallel)
  {
    std::vector<double> lDa;
#pragma omp for schedule(dynamic, 4)
    for (int j = 1; j < n; ++j) {
      lDa.assign(j, kNeg);
      double D = 0.0;
      for (int c = j - 1; c >= 0; --c) {
        D += t.mu[c];
        lDa[c] = mul(a, safe_log(D));
      }
      double m = kNeg;
      for (int i = 0; i < j; ++i) {
        double inner = kNeg;
        for (int c = i; c < j; ++c) inner = std::max(inner, add(lDa[c], vb[i][c]));
        m = std::max(m, add(-a * t.lW[i], inner));
      }
      S[j] = m;
    }
  }
  return mul((p - q) / (p * q), outer(log_cells(t.mw), S));
}

TwoTerms script_c5(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  const double alpha = q / (1.0 - q);
  const double beta = p / (p - q);
  const double e = p * (1.0 - q) / (p - q);
  const std::vector<double> L = inner_u(t, alpha, ex);
  std::vector<double> S(n);
  for (int i = 0; i < n; ++i) S[i] = mul(e, L[i]);
  TwoTerms out;
  out.first = mul((p - q) / (p * q), outer(w_masses(t, 1.0 - beta), S));
  out.second = std::isinf(t.lWa)
                   ? kNeg
                   : add(-t.lWa / p, mul((1.0 - q) / q, L[0]));
  return out;
}

double script_c6(const NodeTable& t, double p, double q, Exec ex) {
  const int n = t.n();
  const double r = t.r;
  const double alpha = q / (p - q);
  const double e = q * (p - r) / (r * (p - q));
  const std::vector<double> L3 = inner_w(t, p / (p - r), p * r / (p - r), ex);
  std::vector<double> S(n);
  for (int i = 0; i < n; ++i) S[i] = mul(e, L3[i]);
  return mul((p - q) / (p * q), outer(u_masses(t, alpha + 1.0), S));
}

double h_sup(const NodeTable& t, double q) {
  std::vector<double> row;
  v_row(t, 0, row);
  double m = kNeg;
  for (int c = 0; c < t.n(); ++c) m = std::max(m, add(mul(1.0 / q, t.lU[c]), row[c]));
  return m;
}

double h_int(const NodeTable& t, double q) {
  const double alpha = q / (1.0 - q);
  std::vector<double> row;
  const double L = inner_u_row(t, alpha, u_masses(t, alpha + 1.0), 0, row);
  return mul((1.0 - q) / q, L);
}

// ---------------------------------------------------------------------------

namespace reference {

namespace {

double V(const NodeTable& t, int i, int c) {
  if (t.r < 1.0) {
    double s = 0.0;
    for (int m = i; m < c; ++m) s += t.mv[m];
    return std::pow(s, (1.0 - t.r) / t.r);
  }
  if (c == i) return t.rl[i];
  double m = 0.0;
  for (int k = i; k < c; ++k) m = std::max(m, t.sv[k]);
  return m;
}

// V_r(x_c, x_j) approached from the left when c == j.
double Vl(const NodeTable& t, int c, int j) {
  if (c == j) return t.r < 1.0 ? 0.0 : t.ll[j];
  return V(t, c, j);
}

double U(const NodeTable& t, int c) {
  double s = t.tail_mu;
  for (int m = c; m + 1 < t.n(); ++m) s += t.mu[m];
  return s;
}

double W(const NodeTable& t, int c) {
  double s = t.tail_mw;
  for (int m = c; m + 1 < t.n(); ++m) s += t.mw[m];
  return s;
}

// (A_l^k - A_r^k) / k.
double mass_pow(double al, double ar, double k) {
  return (std::pow(al, k) - std::pow(ar, k)) / k;
}

double pw(double x, double e) { return x == 0.0 ? 0.0 : std::pow(x, e); }

double inner_u_at(const NodeTable& t, double alpha, int i) {
  const int n = t.n();
  double s = 0.0;
  for (int c = i; c + 1 < n; ++c) {
    const double E = mass_pow(U(t, c), U(t, c + 1), alpha + 1.0);
    s += E * 0.5 * (pw(V(t, i, c), alpha) + pw(V(t, i, c + 1), alpha));
  }
  if (t.tail_mu > 0.0)
    s += std::pow(t.tail_mu, alpha + 1.0) / (alpha + 1.0) *
         pw(V(t, i, n - 1), alpha);
  return s;
}

double inner_w_at(const NodeTable& t, double beta, double gamma, int j) {
  double s = 0.0;
  if (t.head_mw > 0.0) {
    const double Wa = W(t, 0) + t.head_mw;
    s += mass_pow(Wa, W(t, 0), 1.0 - beta) * pw(Vl(t, 0, j), gamma);
  }
  for (int c = 0; c < j; ++c) {
    const double F = mass_pow(W(t, c), W(t, c + 1), 1.0 - beta);
    s += F * 0.5 * (pw(Vl(t, c, j), gamma) + pw(Vl(t, c + 1, j), gamma));
  }
  return s;
}

double outer_sum(const std::vector<double>& mass, const std::vector<double>& S) {
  double s = 0.0;
  for (std::size_t c = 0; c < mass.size(); ++c)
    s += mass[c] * 0.5 * (S[c] + S[c + 1]);
  return s;
}

std::vector<double> u_stieltjes(const NodeTable& t, double k) {
  std::vector<double> out(t.n() - 1);
  for (int c = 0; c + 1 < t.n(); ++c) out[c] = mass_pow(U(t, c), U(t, c + 1), k);
  return out;
}

double D(const NodeTable& t, int c, int j) {
  double s = 0.0;
  for (int m = c; m < j; ++m) s += t.mu[m];
  return s;
}

}  // namespace

double c1(const NodeTable& t, double p, double q) {
  double best = 0.0;
  for (int i = 0; i < t.n(); ++i)
    for (int c = i; c < t.n(); ++c)
      best = std::max(best, std::pow(W(t, i), -1.0 / p) *
                                pw(U(t, c), 1.0 / q) * V(t, i, c));
  return safe_log(best);
}

double c2(const NodeTable& t, double p, double q) {
  double best = 0.0;
  for (int i = 0; i < t.n(); ++i)
    best = std::max(best, std::pow(W(t, i), -1.0 / p) *
                              pw(inner_u_at(t, q / (1 - q), i), (1 - q) / q));
  return safe_log(best);
}

double c3(const NodeTable& t, double p, double q) {
  const double r = t.r;
  double best = 0.0;
  for (int j = 0; j < t.n(); ++j)
    best = std::max(
        best, pw(U(t, j), 1.0 / q) *
                  pw(inner_w_at(t, p / (p - r), p * r / (p - r), j),
                     (p - r) / (p * r)));
  return safe_log(best);
}

double c4(const NodeTable& t, double p, double q) {
  const double alpha = q / (p - q);
  std::vector<double> S(t.n(), 0.0);
  for (int j = 0; j < t.n(); ++j)
    for (int i = 0; i <= j; ++i)
      S[j] = std::max(S[j], std::pow(W(t, i), -alpha) * pw(Vl(t, i, j), p * alpha));
  return safe_log(pw(outer_sum(u_stieltjes(t, alpha + 1.0), S), (p - q) / (p * q)));
}

double c5(const NodeTable& t, double p, double q) {
  const double alpha = q / (1.0 - q);
  std::vector<double> S(t.n(), 0.0);
  for (int j = 1; j < t.n(); ++j) {
    for (int i = 0; i < j; ++i) {
      double G = 0.0;
      for (int c = i; c < j; ++c) {
        const double T = mass_pow(D(t, c, j), D(t, c + 1, j), alpha + 1.0);
        G += T * 0.5 * (pw(V(t, i, c), alpha) + pw(V(t, i, c + 1), alpha));
      }
      S[j] = std::max(S[j], std::pow(W(t, i), -p / (p - q)) *
                                pw(G, p * (1 - q) / (p - q)));
    }
  }
  return safe_log(pw(outer_sum(t.mw, S), (p - q) / (p * q)));
}

double c6(const NodeTable& t, double p, double q) {
  const double r = t.r;
  const double alpha = q / (p - q);
  const double e = q * (p - r) / (r * (p - q));
  std::vector<double> S(t.n(), 0.0);
  for (int j = 1; j < t.n(); ++j) {
    for (int i = 0; i < j; ++i) {
      const double K = mass_pow(U(t, i), U(t, j), alpha + 1.0);
      const double I = inner_w_at(t, p / (p - r), p * r / (p - r), i);
      S[j] = std::max(S[j], K / W(t, i) * pw(I, e));
    }
  }
  return safe_log(pw(outer_sum(t.mw, S), (p - q) / (p * q)));
}

double c7(const NodeTable& t, double p, double q) {
  const double a = p / (p - q);
  const double bb = p * q / (p - q);
  std::vector<double> S(t.n(), 0.0);
  for (int j = 1; j < t.n(); ++j)
    for (int i = 0; i < j; ++i)
      for (int c = i; c < j; ++c)
        S[j] = std::max(S[j], std::pow(W(t, i), -a) * pw(D(t, c, j), a) *
                                  pw(V(t, i, c), bb));
  return safe_log(pw(outer_sum(t.mw, S), (p - q) / (p * q)));
}

TwoTerms script_c5(const NodeTable& t, double p, double q) {
  const double alpha = q / (1.0 - q);
  const double beta = p / (p - q);
  const double e = p * (1.0 - q) / (p - q);
  std::vector<double> S(t.n()), F(t.n() - 1);
  for (int i = 0; i < t.n(); ++i) S[i] = pw(inner_u_at(t, alpha, i), e);
  for (int c = 0; c + 1 < t.n(); ++c)
    F[c] = mass_pow(W(t, c), W(t, c + 1), 1.0 - beta);
  TwoTerms out;
  out.first = safe_log(pw(outer_sum(F, S), (p - q) / (p * q)));
  out.second = std::isinf(t.lWa)
                   ? kNeg
                   : safe_log(std::pow(W(t, 0) + t.head_mw, -1.0 / p) *
                              pw(inner_u_at(t, alpha, 0), (1 - q) / q));
  return out;
}

double script_c6(const NodeTable& t, double p, double q) {
  const double r = t.r;
  const double alpha = q / (p - q);
  const double e = q * (p - r) / (r * (p - q));
  std::vector<double> S(t.n());
  for (int i = 0; i < t.n(); ++i)
    S[i] = pw(inner_w_at(t, p / (p - r), p * r / (p - r), i), e);
  return safe_log(pw(outer_sum(u_stieltjes(t, alpha + 1.0), S), (p - q) / (p * q)));
}

double h_sup(const NodeTable& t, double q) {
  double best = 0.0;
  for (int c = 0; c < t.n(); ++c)
    best = std::max(best, pw(U(t, c), 1.0 / q) * V(t, 0, c));
  return safe_log(best);
}

double h_int(const NodeTable& t, double q) {
  return safe_log(pw(inner_u_at(t, q / (1.0 - q), 0), (1.0 - q) / q));
}

}  // namespace reference

}  // namespace hardy::kernels
