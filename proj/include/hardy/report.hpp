#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/conditions.hpp"
#include "hardy/oracle.hpp"
#include "hardy/weights_io.hpp"

namespace hardy {

struct OracleSettings {
  bool enabled = false;
  int grid_n = 512;
  int restarts = 8;
  int iters = 2000;
  std::uint64_t seed = 0;
};

struct ProblemConfig {
  Interval interval;
  /// Exactly one of the two exponent forms is set.
  std::optional<ParamTriple> triple;
  std::optional<CesaroProblem> cesaro;
  /// u, v, w for the triple form; u1, v1, u2, v2 for the Cesaro form.
  std::vector<Weight> weights;
  Quadrature quad;
  OracleSettings oracle;
  int k_min = -64;
  int k_max = 64;
};

/// Parses a configuration document. Syntax errors carry line and column,
/// semantic errors the offending field path; both throw ParseError.
ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::string& path);
Json config_to_json(const ProblemConfig& c);

enum class Verdict { holds, fails, trivial_weights };
const char* verdict_name(Verdict v);

struct OracleSummary {
  double lower_bound = 0.0;
  long iterations = 0;
  bool converged = false;
  int grid_size = 0;
  std::vector<double> edges;
  std::vector<double> heights;
};

struct Report {
  Json config;
  Verdict verdict = Verdict::fails;
  std::optional<ParamTriple> params;  // after the Cesaro reduction
  std::optional<ConditionReport> conditions;
  std::optional<OracleSummary> oracle;
  std::optional<double> sandwich_ratio;
  std::vector<std::string> warnings;
};

Json ext_to_json(const ExtValue& v);
ExtValue ext_from_json(const Json& j, const std::string& path);

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);
/// Pretty-printed JSON, two-space indent, trailing newline.
std::string serialize(const Report& r);
Report parse_report(const std::string& text);

/// The exponents and weights of the main inequality for a configuration
/// (after the Cesaro reduction when needed).
ReducedProblem reduced_problem(const ProblemConfig& c);

/// Reduce, classify, decide and optionally run the oracle. Hypothesis
/// violations propagate as exceptions.
Report run_check(const ProblemConfig& c, std::vector<std::pair<long, double>>* trajectory = nullptr);

/// "p=0.5,1,2;q=1;r=0.5,1;w_scale=1,2". Keys: p, q, r, u_scale, v_scale,
/// w_scale. A key with no values, or an empty spec with no key, yields no rows.
struct SweepGrid {
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  bool empty = false;
};
SweepGrid parse_sweep_grid(const std::string& spec);

/// Header plus one row per grid point, in grid order; rows are evaluated on
/// up to `workers` threads. Row failures are written into the error column.
std::string run_sweep(const ProblemConfig& c, const SweepGrid& grid, int workers);

/// %.12g, or "inf".
std::string csv_number(double x);

}  // namespace hardy
