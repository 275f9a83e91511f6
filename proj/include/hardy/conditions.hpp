#pragma once

#include <map>
#include <string>
#include <vector>

#include "hardy/discretize.hpp"
#include "hardy/kernels.hpp"
#include "hardy/weights.hpp"

namespace hardy {

struct ParamTriple {
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;

  /// Throws DomainError for non-positive or non-finite exponents and
  /// TrivialWeights for r > 1.
  void validate() const;
};

enum class CaseId { I, II, III, IV, V, VI, VII };

const char* case_name(CaseId c);
CaseId case_from_name(const std::string& s);

CaseId classify(const ParamTriple& pr);

/// Names of the continuous and discrete constants whose sum estimates the
/// best constant in each case.
std::vector<std::string> case_constants(CaseId c);
std::vector<std::string> case_discrete_constants(CaseId c);

/// Controls for the mesh refinement of the continuous constants and for the
/// truncation of the discrete ones.
struct RefineOptions {
  double h0 = 0.125;
  double h_min = 1.0 / 64;
  std::vector<int> depths{8, 16, 32, 64, 128, 256, 512};
  double depth_tol = 1e-6;
  /// Node budget for the kernels that are cubic in the node count.
  int cubic_node_cap = 480;
  int k_min = -64;
  int k_max = 64;
  kernels::Exec exec = kernels::Exec::parallel;
};

struct Evaluation {
  ExtValue value;
  std::string note;  // set when the value diverged or was truncated
};

/// Continuous constants "C1".."C7" over (a, b).
Evaluation compute_C(const std::string& name, const ParamTriple& pr,
                     const Weight& u, const Weight& v, const Weight& w,
                     const Quadrature& quad = {}, const RefineOptions& opt = {});

/// "SC5" (both summands) and "SC6", defined for 0 < r <= q < p < 1.
Evaluation compute_script_C(const std::string& name, const ParamTriple& pr,
                            const Weight& u, const Weight& v, const Weight& w,
                            const Quadrature& quad = {},
                            const RefineOptions& opt = {});

/// H(x, y): the supremum form for q >= 1 and the integral form for q < 1.
ExtValue compute_H(const Weight& u, const Weight& v, double r, double q,
                   const Abscissa& x, const Abscissa& y,
                   const Quadrature& quad = {}, const RefineOptions& opt = {});
ExtValue compute_H(const Weight& u, const Weight& v, double r, double q,
                   double x, double y, const Quadrature& quad = {},
                   const RefineOptions& opt = {});

/// Discrete constants "A1".."A4", "B1".."B4" over the levels of `seq` in
/// (first, last]. The index range is widened by doubling from 8 levels
/// until the value settles or diverges.
Evaluation compute_discrete(const std::string& name, const ParamTriple& pr,
                            const Weight& u, const Weight& v, const Weight& w,
                            const DiscretizingSequence& seq,
                            const Quadrature& quad = {},
                            const RefineOptions& opt = {});

struct ConditionReport {
  CaseId case_id = CaseId::I;
  std::map<std::string, ExtValue> continuous;
  std::map<std::string, ExtValue> discrete;
  ExtValue estimate;
  ExtValue discrete_estimate;
  bool holds = false;
  std::vector<std::string> diverged;
  std::vector<std::string> diagnostics;
};

/// Classifies, evaluates the case constants (plus SC5, SC6 where they are
/// defined) and the matching discrete constants.
ConditionReport decide(const ParamTriple& pr, const Weight& u, const Weight& v,
                       const Weight& w, const Quadrature& quad = {},
                       const RefineOptions& opt = {});

}  // namespace hardy
