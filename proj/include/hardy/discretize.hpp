#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hardy/weights.hpp"

namespace hardy {

struct Truncation {
  int k_min = -64;
  int k_max = 64;
  /// W at the last emitted point.
  double tail_mass = 0.0;
  /// W at the first emitted point when N = -inf (the discarded head starts
  /// there), otherwise W(a).
  double head_mass = 0.0;
};

/// Points x_k with W(x_k) = 2^-k * W0 for consecutive levels k.
struct DiscretizingSequence {
  Interval domain;
  std::vector<Abscissa> points;
  std::vector<int> levels;
  std::vector<double> W;  // W(x_k) as evaluated at the emitted points
  double W0 = 1.0;
  /// True when W(a) < inf: then the first point is x_N = a with N = 0.
  bool n_finite = true;
  Truncation truncation;
  std::vector<std::string> notes;

  std::size_t size() const { return points.size(); }
  int first_level() const { return levels.front(); }
  int last_level() const { return levels.back(); }
  /// 2^k / W0, the exact value of 1 / W(x_k).
  double inv_W(int k) const;
};

/// Bisection on W-values to relative accuracy 1e-12. When W(a) = inf the
/// sequence is anchored at a reference point (midpoint of the interval, or
/// a + 1 for b = inf) and runs from k_min; levels whose points can no longer
/// be separated in double precision end the sequence early (noted).
DiscretizingSequence build_discretizing_sequence(const Weight& w,
                                                 const Quadrature& quad,
                                                 int k_min, int k_max);

struct EquivCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, 1 when both vanish
};

/// Both sides of the integral and supremum discretization equivalences for a
/// non-decreasing h, over x in (x_n, x_K) and k in (n, K] with K the last
/// emitted level.
struct IntSupCheck {
  EquivCheck integral;
  EquivCheck supremum;
};
IntSupCheck check_int_sup_equiv(const Weight& w,
                                const std::function<double(double)>& h,
                                double beta, const DiscretizingSequence& seq,
                                int n, const Quadrature& quad = {});

/// sup_{x < x_m} W(x)^-beta h(x) against max_{N < k <= m} W(x_k)^-beta
/// h(x_{k-1}) for a non-increasing h.
EquivCheck check_neg_sup_equiv(const Weight& w,
                               const std::function<double(double)>& h,
                               double beta, const DiscretizingSequence& seq,
                               int m, const Quadrature& quad = {});

enum class SequenceKind { strongly_increasing, strongly_decreasing, general };

struct SequenceSample {
  std::vector<double> values;
  SequenceKind kind = SequenceKind::general;
  double ratio_bound = 1.0;

  /// Classifies `values` (all positive): strongly decreasing if every ratio
  /// a_{k+1}/a_k is < 1, strongly increasing if every ratio is > 1.
  static SequenceSample from(std::vector<double> values);
};

struct SequenceIdentity {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Evaluates both sides of every sequence equivalence that applies to the
/// kind of `a`, with weights b and exponent alpha. Throws DomainError for a
/// general sample or mismatched lengths.
std::vector<SequenceIdentity> sequence_equiv_suite(const SequenceSample& a,
                                                   const std::vector<double>& b,
                                                   double alpha);

struct KernelCheck {
  EquivCheck kersup;
  EquivCheck kersum;
  /// max d_{k,i} / (d_{k,j} + d_{j,i}) over k <= j <= i.
  double triangle_constant = 0.0;
};

/// Kernel identities for d on indices [0, M+1], strongly increasing a and
/// positive b on [0, M]. Throws DomainError naming a witness when d is not
/// monotone as required.
KernelCheck regular_kernel_check(const std::function<double(int, int)>& d,
                                 const std::vector<double>& a,
                                 const std::vector<double>& b, double beta);

/// int_x^y (int_t^z u)^alpha u(t) dt by quadrature over t, and the product
/// (int_x^y u)(int_x^z u)^alpha, for x <= y <= z.
struct UEstimate {
  double integral = 0.0;
  double product = 0.0;
};
UEstimate u_estimate(const Weight& u, double x, double y, double z,
                     double alpha, const Quadrature& quad = {});

}  // namespace hardy
