#include "hardy/weights_io.hpp"

#include <cmath>

namespace hardy {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    fail(path.empty() ? key : path + "." + key, "missing");
  }
  return j.at(key);
}

double opt_number(const Json& j, const char* key, double fallback,
                  const std::string& path) {
  if (!j.contains(key)) return fallback;
  return json_number(j.at(key), path + "." + key);
}

Json interval_json(const Interval& d) {
  return Json::array({number_json(d.a), number_json(d.b)});
}

}  // namespace

double json_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
  }
  fail(path, "expected a number or \"inf\"");
}

Json number_json(double x) {
  if (std::isinf(x) && x > 0) return "inf";
  if (std::isinf(x)) return "-inf";
  return x;
}

Interval interval_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [a, b]");
  try {
    return Interval(json_number(j[0], path + "[0]"),
                    json_number(j[1], path + "[1]"));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

Weight weight_from_json(const Json& j, const Interval& dom,
                        const std::string& path) {
  if (!j.is_object()) fail(path, "expected a weight object");
  const Interval d =
      j.contains("domain") ? interval_from_json(j["domain"], path + ".domain")
                           : dom;
  const Json& kind = need(j, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == "power") {
      return Weight::power(d, opt_number(j, "c", 1.0, path),
                           opt_number(j, "alpha", 0.0, path),
                           opt_number(j, "beta", 0.0, path));
    }
    if (k == "exp") {
      return Weight::exponential(d, opt_number(j, "c", 1.0, path),
                                 opt_number(j, "alpha", 0.0, path));
    }
    if (k == "piecewise") {
      const Json& ps = need(j, "pieces", path);
      if (!ps.is_array() || ps.empty()) {
        fail(path + ".pieces", "expected a non-empty array");
      }
      std::vector<Weight> pieces;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string pp = path + ".pieces[" + std::to_string(i) + "]";
        if (!ps[i].contains("domain")) fail(pp + ".domain", "missing");
        pieces.push_back(weight_from_json(ps[i], d, pp));
      }
      Weight w = Weight::piecewise(std::move(pieces));
      if (!(w.domain() == d)) fail(path, "pieces do not cover the domain");
      return w;
    }
    if (k == "table") {
      const Json& pts = need(j, "points", path);
      if (!pts.is_array()) fail(path + ".points", "expected an array");
      std::vector<std::pair<double, double>> v;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string pp = path + ".points[" + std::to_string(i) + "]";
        if (!pts[i].is_array() || pts[i].size() != 2) fail(pp, "expected [t, v]");
        v.emplace_back(json_number(pts[i][0], pp), json_number(pts[i][1], pp));
      }
      Weight w = Weight::table(v);
      if (!(w.domain() == d)) {
        fail(path, "table abscissae must span exactly the weight domain");
      }
      return w;
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown kind '" + k + "'");
}

Json weight_to_json(const Weight& w) {
  Json j;
  if (auto* p = std::get_if<PowerKind>(&w.kind())) {
    j["kind"] = "power";
    j["c"] = p->c;
    j["alpha"] = p->alpha;
    j["beta"] = p->beta;
  } else if (auto* e = std::get_if<ExpKind>(&w.kind())) {
    j["kind"] = "exp";
    j["c"] = e->c;
    j["alpha"] = e->alpha;
  } else if (auto* pw = std::get_if<PiecewiseKind>(&w.kind())) {
    j["kind"] = "piecewise";
    j["pieces"] = Json::array();
    for (const auto& piece : pw->pieces) j["pieces"].push_back(weight_to_json(piece));
  } else if (auto* t = std::get_if<TableKind>(&w.kind())) {
    j["kind"] = "table";
    j["points"] = Json::array();
    for (std::size_t i = 0; i < t->t.size(); ++i)
      j["points"].push_back(Json::array({t->t[i], t->v[i]}));
  }
  j["domain"] = interval_json(w.domain());
  return j;
}

}  // namespace hardy
