#include "hardy/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace hardy {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  const std::string p = path.empty() ? key : path + "." + key;
  if (!j.is_object() || !j.contains(key)) fail(p, "missing");
  return j.at(key);
}

std::string sub(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

int get_int(const Json& j, const char* key, int fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(sub(path, key), "expected an integer");
  return v.get<int>();
}

double get_num(const Json& j, const char* key, double fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  return json_number(j.at(key), sub(path, key));
}

bool get_bool(const Json& j, const char* key, bool fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(sub(path, key), "expected true or false");
  return j.at(key).get<bool>();
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(sub(path, it.key().c_str()), "unknown field");
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + msg);
  }
}

Json ext_map(const std::map<std::string, ExtValue>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = ext_to_json(v);
  return j;
}

std::map<std::string, ExtValue> ext_map_from(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  std::map<std::string, ExtValue> m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    m[it.key()] = ext_from_json(it.value(), path + "." + it.key());
  }
  return m;
}

std::vector<std::string> strings(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) fail(path, "expected strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(json_number(x, path));
  return out;
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) fail("", "configuration must be an object");
  check_keys(j, {"interval", "exponents", "weights", "quadrature", "oracle", "discretization"}, "");
  ProblemConfig c;
  c.interval = interval_from_json(need(j, "interval", ""), "interval");
  const Json& ex = need(j, "exponents", "");
  if (!ex.is_object()) fail("exponents", "expected an object");
  const bool triple = ex.contains("p") || ex.contains("q") || ex.contains("r");
  const bool ces = ex.contains("p1") || ex.contains("q1") || ex.contains("p2") || ex.contains("q2");
  if (triple == ces) fail("exponents", "give exactly one of {p, q, r} or {p1, q1, p2, q2}");
  const Json& ws = need(j, "weights", "");
  if (!ws.is_object()) fail("weights", "expected an object");
  std::vector<const char*> names;
  if (triple) {
    check_keys(ex, {"p", "q", "r"}, "exponents");
    c.triple = ParamTriple{json_number(need(ex, "p", "exponents"), "exponents.p"),
                           json_number(need(ex, "q", "exponents"), "exponents.q"),
                           json_number(need(ex, "r", "exponents"), "exponents.r")};
    for (double e : {c.triple->p, c.triple->q, c.triple->r}) {
      if (!(e > 0.0) || !std::isfinite(e)) fail("exponents", "exponents must be positive and finite");
    }
    names = {"u", "v", "w"};
    check_keys(ws, {"u", "v", "w"}, "weights");
  } else {
    check_keys(ex, {"p1", "q1", "p2", "q2"}, "exponents");
    CesaroProblem cp;
    cp.p1 = json_number(need(ex, "p1", "exponents"), "exponents.p1");
    cp.q1 = json_number(need(ex, "q1", "exponents"), "exponents.q1");
    cp.p2 = json_number(need(ex, "p2", "exponents"), "exponents.p2");
    cp.q2 = json_number(need(ex, "q2", "exponents"), "exponents.q2");
    for (double e : {cp.p1, cp.q1, cp.p2, cp.q2}) {
      if (!(e > 0.0) || !std::isfinite(e)) fail("exponents", "exponents must be positive and finite");
    }
    c.cesaro = cp;
    names = {"u1", "v1", "u2", "v2"};
    check_keys(ws, {"u1", "v1", "u2", "v2"}, "weights");
  }
  for (const char* n : names) {
    const std::string path = std::string("weights.") + n;
    Weight w = weight_from_json(need(ws, n, "weights"), c.interval, path);
    if (!(w.domain() == c.interval)) fail(path, "domain differs from the interval");
    c.weights.push_back(std::move(w));
  }
  if (j.contains("quadrature")) {
    const Json& q = j["quadrature"];
    if (!q.is_object()) fail("quadrature", "expected an object");
    check_keys(q, {"rel_tol", "abs_tol", "max_panels", "divergence_threshold"}, "quadrature");
    c.quad.rel_tol = get_num(q, "rel_tol", c.quad.rel_tol, "quadrature");
    c.quad.abs_tol = get_num(q, "abs_tol", c.quad.abs_tol, "quadrature");
    c.quad.max_panels = get_int(q, "max_panels", c.quad.max_panels, "quadrature");
    c.quad.divergence_threshold =
        get_num(q, "divergence_threshold", c.quad.divergence_threshold, "quadrature");
    try {
      c.quad.validate();
    } catch (const std::invalid_argument& e) {
      fail("quadrature", e.what());
    }
  }
  if (j.contains("oracle")) {
    const Json& o = j["oracle"];
    if (!o.is_object()) fail("oracle", "expected an object");
    check_keys(o, {"enabled", "grid_n", "restarts", "iters", "seed"}, "oracle");
    c.oracle.enabled = get_bool(o, "enabled", c.oracle.enabled, "oracle");
    c.oracle.grid_n = get_int(o, "grid_n", c.oracle.grid_n, "oracle");
    c.oracle.restarts = get_int(o, "restarts", c.oracle.restarts, "oracle");
    c.oracle.iters = get_int(o, "iters", c.oracle.iters, "oracle");
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) fail("oracle.seed", "expected a non-negative integer");
      c.oracle.seed = o["seed"].get<std::uint64_t>();
    }
    if (c.oracle.grid_n < 2) fail("oracle.grid_n", "must be at least 2");
    if (c.oracle.restarts < 1) fail("oracle.restarts", "must be at least 1");
    if (c.oracle.iters < 1) fail("oracle.iters", "must be at least 1");
  }
  if (j.contains("discretization")) {
    const Json& d = j["discretization"];
    if (!d.is_object()) fail("discretization", "expected an object");
    check_keys(d, {"k_min", "k_max"}, "discretization");
    c.k_min = get_int(d, "k_min", c.k_min, "discretization");
    c.k_max = get_int(d, "k_max", c.k_max, "discretization");
    if (c.k_min > c.k_max) fail("discretization", "k_min exceeds k_max");
  }
  return c;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Json config_to_json(const ProblemConfig& c) {
  Json j;
  j["interval"] = Json::array({number_json(c.interval.a), number_json(c.interval.b)});
  Json ex, ws;
  if (c.triple) {
    ex["p"] = c.triple->p;
    ex["q"] = c.triple->q;
    ex["r"] = c.triple->r;
    const char* names[] = {"u", "v", "w"};
    for (int i = 0; i < 3; ++i) ws[names[i]] = weight_to_json(c.weights[i]);
  } else {
    ex["p1"] = c.cesaro->p1;
    ex["q1"] = c.cesaro->q1;
    ex["p2"] = c.cesaro->p2;
    ex["q2"] = c.cesaro->q2;
    const char* names[] = {"u1", "v1", "u2", "v2"};
    for (int i = 0; i < 4; ++i) ws[names[i]] = weight_to_json(c.weights[i]);
  }
  j["exponents"] = ex;
  j["weights"] = ws;
  j["quadrature"] = {{"rel_tol", c.quad.rel_tol},
                     {"abs_tol", c.quad.abs_tol},
                     {"max_panels", c.quad.max_panels},
                     {"divergence_threshold", number_json(c.quad.divergence_threshold)}};
  j["oracle"] = {{"enabled", c.oracle.enabled},
                 {"grid_n", c.oracle.grid_n},
                 {"restarts", c.oracle.restarts},
                 {"iters", c.oracle.iters},
                 {"seed", c.oracle.seed}};
  j["discretization"] = {{"k_min", c.k_min}, {"k_max", c.k_max}};
  return j;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::trivial_weights: return "trivial-weights-only";
  }
  return "fails";
}

Json ext_to_json(const ExtValue& v) {
  return {{"value", number_json(v.value)}, {"error_estimate", v.error_estimate}};
}

ExtValue ext_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected {value, error_estimate}");
  return {json_number(need(j, "value", path), path + ".value"),
          json_number(need(j, "error_estimate", path), path + ".error_estimate")};
}

Json report_to_json(const Report& r) {
  Json j;
  j["config"] = r.config;
  j["verdict"] = verdict_name(r.verdict);
  if (r.params) {
    j["params"] = {{"p", r.params->p}, {"q", r.params->q}, {"r", r.params->r}};
  }
  if (r.conditions) {
    const ConditionReport& c = *r.conditions;
    Json cj;
    cj["case"] = case_name(c.case_id);
    cj["continuous"] = ext_map(c.continuous);
    cj["discrete"] = ext_map(c.discrete);
    cj["estimate"] = ext_to_json(c.estimate);
    cj["discrete_estimate"] = ext_to_json(c.discrete_estimate);
    cj["holds"] = c.holds;
    cj["diverged"] = c.diverged;
    cj["diagnostics"] = c.diagnostics;
    j["conditions"] = cj;
  }
  if (r.oracle) {
    const OracleSummary& o = *r.oracle;
    j["oracle"] = {{"lower_bound", o.lower_bound},
                   {"iterations", o.iterations},
                   {"converged", o.converged},
                   {"grid_size", o.grid_size},
                   {"argmax", {{"edges", o.edges}, {"heights", o.heights}}}};
  }
  if (r.sandwich_ratio) j["sandwich_ratio"] = *r.sandwich_ratio;
  j["warnings"] = r.warnings;
  return j;
}

Report report_from_json(const Json& j) {
  if (!j.is_object()) fail("", "report must be an object");
  Report r;
  r.config = need(j, "config", "");
  const std::string v = need(j, "verdict", "").get<std::string>();
  if (v == "holds") {
    r.verdict = Verdict::holds;
  } else if (v == "fails") {
    r.verdict = Verdict::fails;
  } else if (v == "trivial-weights-only") {
    r.verdict = Verdict::trivial_weights;
  } else {
    fail("verdict", "unknown verdict '" + v + "'");
  }
  if (j.contains("params")) {
    const Json& p = j["params"];
    r.params = ParamTriple{json_number(need(p, "p", "params"), "params.p"),
                           json_number(need(p, "q", "params"), "params.q"),
                           json_number(need(p, "r", "params"), "params.r")};
  }
  if (j.contains("conditions")) {
    const Json& cj = j["conditions"];
    ConditionReport c;
    try {
      c.case_id = case_from_name(need(cj, "case", "conditions").get<std::string>());
    } catch (const DomainError& e) {
      fail("conditions.case", e.what());
    }
    c.continuous = ext_map_from(need(cj, "continuous", "conditions"), "conditions.continuous");
    c.discrete = ext_map_from(need(cj, "discrete", "conditions"), "conditions.discrete");
    c.estimate = ext_from_json(need(cj, "estimate", "conditions"), "conditions.estimate");
    c.discrete_estimate = ext_from_json(need(cj, "discrete_estimate", "conditions"),
                                        "conditions.discrete_estimate");
    c.holds = need(cj, "holds", "conditions").get<bool>();
    c.diverged = strings(need(cj, "diverged", "conditions"), "conditions.diverged");
    c.diagnostics = strings(need(cj, "diagnostics", "conditions"), "conditions.diagnostics");
    r.conditions = std::move(c);
  }
  if (j.contains("oracle")) {
    const Json& oj = j["oracle"];
    OracleSummary o;
    o.lower_bound = json_number(need(oj, "lower_bound", "oracle"), "oracle.lower_bound");
    o.iterations = need(oj, "iterations", "oracle").get<long>();
    o.converged = need(oj, "converged", "oracle").get<bool>();
    o.grid_size = need(oj, "grid_size", "oracle").get<int>();
    const Json& am = need(oj, "argmax", "oracle");
    o.edges = numbers(need(am, "edges", "oracle.argmax"), "oracle.argmax.edges");
    o.heights = numbers(need(am, "heights", "oracle.argmax"), "oracle.argmax.heights");
    r.oracle = std::move(o);
  }
  if (j.contains("sandwich_ratio")) {
    r.sandwich_ratio = json_number(j["sandwich_ratio"], "sandwich_ratio");
  }
  r.warnings = strings(need(j, "warnings", ""), "warnings");
  return r;
}

std::string serialize(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

Report parse_report(const std::string& text) { return report_from_json(parse_json(text)); }

ReducedProblem reduced_problem(const ProblemConfig& c) {
  if (c.triple) return {*c.triple, c.weights[0], c.weights[1], c.weights[2]};
  return cesaro_reduce(*c.cesaro, c.weights[0], c.weights[1], c.weights[2], c.weights[3]);
}

Report run_check(const ProblemConfig& c, std::vector<std::pair<long, double>>* trajectory) {
  Report rep;
  rep.config = config_to_json(c);
  std::optional<ReducedProblem> rp;
  try {
    rp = reduced_problem(c);
    rep.params = rp->params;
    rp->params.validate();
  } catch (const TrivialWeights& e) {
    rep.verdict = Verdict::trivial_weights;
    rep.warnings.push_back(e.what());
    return rep;
  }
  RefineOptions ropt;
  ropt.k_min = c.k_min;
  ropt.k_max = c.k_max;
  ConditionReport cr = decide(rp->params, rp->u, rp->v, rp->w, c.quad, ropt);
  rep.verdict = cr.holds ? Verdict::holds : Verdict::fails;
  if (c.oracle.enabled) {
    OracleOptions oo;
    oo.grid_n = c.oracle.grid_n;
    oo.restarts = c.oracle.restarts;
    oo.iters = c.oracle.iters;
    oo.seed = c.oracle.seed;
    const OracleResult o = maximize_main(rp->params, rp->u, rp->v, rp->w, c.quad, oo);
    OracleSummary s;
    s.lower_bound = o.lower_bound;
    s.iterations = o.iterations;
    s.converged = o.converged;
    s.grid_size = o.grid_size;
    for (const auto& e : o.argmax.edges) s.edges.push_back(e.x);
    s.heights = o.argmax.heights;
    if (!o.converged) rep.warnings.push_back("oracle stopped at its sweep budget");
    if (cr.estimate.is_finite() && o.lower_bound > 0.0) {
      rep.sandwich_ratio = cr.estimate.value / o.lower_bound;
    }
    if (trajectory) *trajectory = o.trajectory;
    rep.oracle = std::move(s);
  }
  rep.conditions = std::move(cr);
  return rep;
}

std::string csv_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

SweepGrid parse_sweep_grid(const std::string& spec) {
  SweepGrid g;
  std::stringstream ss(spec);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, ';')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    any = true;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("sweep grid: expected key=values in '" + part + "'");
    std::string key = part.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key != "p" && key != "q" && key != "r" && key != "u_scale" &&
        key != "v_scale" && key != "w_scale") {
      throw ParseError("sweep grid: unknown key '" + key + "'");
    }
    for (const auto& [k, vals] : g.axes) {
      if (k == key) throw ParseError("sweep grid: key '" + key + "' repeated");
    }
    std::vector<double> vals;
    std::stringstream vs(part.substr(eq + 1));
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      std::size_t used = 0;
      double x;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("sweep grid: bad number '" + tok + "' for key '" + key + "'");
      }
      if (tok.find_first_not_of(" \t", used) != std::string::npos) {
        throw ParseError("sweep grid: bad number '" + tok + "' for key '" + key + "'");
      }
      vals.push_back(x);
    }
    if (vals.empty()) g.empty = true;
    g.axes.emplace_back(key, std::move(vals));
  }
  if (!any) g.empty = true;
  return g;
}

namespace {

const char* kColumns[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "SC5", "SC6",
                          "A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string sweep_row(const ProblemConfig& base, const std::map<std::string, double>& pt) {
  ParamTriple pr = *base.triple;
  auto get = [&](const char* k, double fallback) {
    auto it = pt.find(k);
    return it == pt.end() ? fallback : it->second;
  };
  pr.p = get("p", pr.p);
  pr.q = get("q", pr.q);
  pr.r = get("r", pr.r);
  std::vector<std::string> cells{csv_number(pr.p), csv_number(pr.q), csv_number(pr.r)};
  std::string error;
  std::map<std::string, std::string> vals;
  std::string case_s, holds_s, est_s, dest_s, oracle_s, sand_s;
  try {
    const Weight u = scale(base.weights[0], get("u_scale", 1.0));
    const Weight v = scale(base.weights[1], get("v_scale", 1.0));
    const Weight w = scale(base.weights[2], get("w_scale", 1.0));
    ProblemConfig c = base;
    c.triple = pr;
    c.weights = {u, v, w};
    const Report rep = run_check(c);
    if (rep.verdict == Verdict::trivial_weights) {
      case_s = "trivial";
      holds_s = "false";
    } else {
      const ConditionReport& cr = *rep.conditions;
      case_s = case_name(cr.case_id);
      for (const auto& [k, e] : cr.continuous) vals[k] = csv_number(e.value);
      for (const auto& [k, e] : cr.discrete) vals[k] = csv_number(e.value);
      holds_s = cr.holds ? "true" : "false";
      est_s = csv_number(cr.estimate.value);
      dest_s = csv_number(cr.discrete_estimate.value);
      if (rep.oracle) oracle_s = csv_number(rep.oracle->lower_bound);
      if (rep.sandwich_ratio) sand_s = csv_number(*rep.sandwich_ratio);
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  std::vector<std::string> scales;
  for (const char* k : {"u_scale", "v_scale", "w_scale"}) scales.push_back(csv_number(get(k, 1.0)));
  cells.insert(cells.end(), scales.begin(), scales.end());
  cells.push_back(case_s);
  for (const char* col : kColumns) cells.push_back(vals.count(col) ? vals[col] : "");
  cells.insert(cells.end(), {holds_s, est_s, dest_s, oracle_s, sand_s, csv_escape(error)});
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

}  // namespace

std::string run_sweep(const ProblemConfig& c, const SweepGrid& grid, int workers) {
  if (!c.triple) throw ParseError("sweep needs the {p, q, r} exponent form");
  std::string out = "p,q,r,u_scale,v_scale,w_scale,case";
  for (const char* col : kColumns) out += std::string(",") + col;
  out += ",holds,estimate,discrete_estimate,oracle,sandwich_ratio,error\n";
  if (grid.empty) return out;
  std::vector<std::map<std::string, double>> points{{}};
  for (const auto& [key, vals] : grid.axes) {
    std::vector<std::map<std::string, double>> next;
    for (const auto& pt : points) {
      for (double x : vals) {
        auto q = pt;
        q[key] = x;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  std::vector<std::string> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = sweep_row(c, points[i]);
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace hardy
