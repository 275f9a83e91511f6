#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hardy/conditions.hpp"
#include "hardy/discretize.hpp"
#include "hardy/weights.hpp"

namespace hardy {

/// f = heights[c] on (edges[c], edges[c+1]); zero beyond the last edge.
struct StepFunction {
  std::vector<Abscissa> edges;
  std::vector<double> heights;
};

struct OracleOptions {
  int grid_n = 512;
  int restarts = 8;
  /// Maximum number of full coordinate sweeps per restart.
  int iters = 2000;
  std::uint64_t seed = 0;
  /// Extra starting point, resampled onto the grid (cell midpoints).
  std::optional<StepFunction> warm_start;
};

struct OracleResult {
  double lower_bound = 0.0;
  StepFunction argmax;            // continuous oracles
  std::vector<double> sequence;   // discrete oracle
  long iterations = 0;
  bool converged = false;
  int grid_size = 0;
  /// (move count, ratio) after every accepted move of the winning restart.
  std::vector<std::pair<long, double>> trajectory;
};

/// Cell edges used by the oracles: a graded mesh on [lo, hi] with about
/// grid_n cells, refined toward both ends. Doubling grid_n refines the grid.
std::vector<Abscissa> oracle_grid(const Interval& dom, const Abscissa& lo,
                                  const Abscissa& hi,
                                  const std::vector<double>& breaks, int grid_n);

/// LHS / RHS of the main inequality for a step function, each cell
/// integrated by adaptive quadrature. Throws DomainError when the RHS is 0
/// or infinite.
double ratio_main(const StepFunction& f, const ParamTriple& pr, const Weight& u,
                  const Weight& v, const Weight& w, const Quadrature& quad = {});

OracleResult maximize_main(const ParamTriple& pr, const Weight& u,
                           const Weight& v, const Weight& w,
                           const Quadrature& quad = {},
                           const OracleOptions& opts = {});

/// Ratio of the H functional on (x, y): LHS of the main inequality
/// restricted to (x, y) over the integral of f.
double ratio_H(const StepFunction& f, const Weight& u, const Weight& v,
               double r, double q, const Abscissa& x, const Abscissa& y,
               const Quadrature& quad = {});
OracleResult h_functional_oracle(const Weight& u, const Weight& v, double r,
                                 double q, double x, double y,
                                 const Quadrature& quad = {},
                                 const OracleOptions& opts = {});

enum class DiscreteKind { vr_inequality, h_inequality };

/// Coefficients of the two discrete inequalities: for vr_inequality c[i] is
/// the weight of a_i^r in the inner sum and m[k] the u-mass of the k-th
/// outer term; for h_inequality c[k] multiplies a_k^q and m is unused.
struct DiscreteCoefficients {
  std::vector<double> c;
  std::vector<double> m;
};

DiscreteCoefficients discrete_coefficients(DiscreteKind kind,
                                           const ParamTriple& pr,
                                           const Weight& u, const Weight& v,
                                           const DiscretizingSequence& seq,
                                           const Quadrature& quad = {},
                                           const RefineOptions& ropt = {});

double discrete_ratio(DiscreteKind kind, const ParamTriple& pr,
                      const DiscreteCoefficients& co,
                      const std::vector<double>& a);

/// Best constant of the H-inequality in closed form: max_k c_k^(1/q) when
/// p <= q, and the l^(p/(p-q)) norm of c^(1/q) otherwise.
double h_inequality_exact(const ParamTriple& pr, const DiscreteCoefficients& co);

OracleResult discrete_hardy_oracle(DiscreteKind kind, const ParamTriple& pr,
                                   const DiscreteCoefficients& co,
                                   const OracleOptions& opts = {});

struct CesaroProblem {
  double p1 = 1, q1 = 1, p2 = 1, q2 = 1;
};

struct ReducedProblem {
  ParamTriple params;
  Weight u, v, w;
};

/// Substitution h = (f v1)^p1 turning the Cesaro embedding into the main
/// inequality with C = c^p1. Throws TrivialWeights when p2 > p1.
ReducedProblem cesaro_reduce(const CesaroProblem& cp, const Weight& u1,
                             const Weight& v1, const Weight& u2,
                             const Weight& v2);

/// Ratio of the two Cesaro norms for a step function.
double ratio_cesaro(const StepFunction& f, const CesaroProblem& cp,
                    const Weight& u1, const Weight& v1, const Weight& u2,
                    const Weight& v2, const Quadrature& quad = {});
OracleResult maximize_cesaro(const CesaroProblem& cp, const Weight& u1,
                             const Weight& v1, const Weight& u2,
                             const Weight& v2, const Quadrature& quad = {},
                             const OracleOptions& opts = {});

}  // namespace hardy
