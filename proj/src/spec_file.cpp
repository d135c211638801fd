#include "biharm/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "biharm/error.hpp"
#include "json.hpp"

namespace biharm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SpecFileError, origin + ": " + where + ": " + what);
}

struct Reader {
  std::string origin;

  const json& field(const json& obj, const std::string& key, const std::string& where) const {
    if (!obj.is_object()) fail(origin, where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(origin, where + "." + key, "missing");
    return *it;
  }

  int integer(const json& v, const std::string& where) const {
    if (!v.is_number_integer()) fail(origin, where, "expected an integer");
    return v.get<int>();
  }

  double number(const json& v, const std::string& where) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const Expr e = expression(v, where);
      if (!e.free_variables().empty()) fail(origin, where, "expected a constant expression");
      try {
        return evaluate(e, {});
      } catch (const Error& err) {
        fail(origin, where, err.what());
      }
    }
    fail(origin, where, "expected a number");
  }

  Expr expression(const json& v, const std::string& where) const {
    if (v.is_number()) return Expr(v.get<double>());
    if (!v.is_string()) fail(origin, where, "expected an expression string");
    try {
      return parse(v.get<std::string>());
    } catch (const Error& err) {
      fail(origin, where, err.what());
    }
  }

  std::vector<std::string> names(const json& v, const std::string& where) const {
    if (!v.is_array()) fail(origin, where, "expected an array of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) fail(origin, where + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  AmbientSpace ambient(const json& a) const {
    const std::string where = "ambient";
    const json& kind_v = field(a, "kind", where);
    if (!kind_v.is_string()) fail(origin, where + ".kind", "expected a string");
    const std::string kind = kind_v.get<std::string>();
    if (kind == "chart") {
      const std::vector<std::string> coords = names(field(a, "coords", where), where + ".coords");
      const json& m = field(a, "metric", where);
      const std::size_t n = coords.size();
      if (!m.is_array() || m.size() != n) fail(origin, where + ".metric", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
      std::vector<std::vector<Expr>> metric(n, std::vector<Expr>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const std::string row = where + ".metric[" + std::to_string(i) + "]";
        if (!m[i].is_array() || m[i].size() != n) fail(origin, row, "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) metric[i][j] = expression(m[i][j], row + "[" + std::to_string(j) + "]");
      }
      try {
        return AmbientSpace(ChartSpace(coords, metric));
      } catch (const Error& err) {
        fail(origin, where, err.what());
      }
    }
    const int dim = integer(field(a, "dim", where), where + ".dim");
    const int index = a.contains("index") ? integer(a["index"], where + ".index") : 0;
    try {
      if (kind == "flat") return AmbientSpace::flat(dim, index);
      const double radius = a.contains("radius") ? number(a["radius"], where + ".radius") : 1.0;
      if (kind == "sphere") return AmbientSpace::sphere(dim, index, radius);
      if (kind == "hyperbolic") return AmbientSpace::hyperbolic(dim, index, radius);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::SpecFileError) throw;
      fail(origin, where, err.what());
    }
    fail(origin, where + ".kind", "unknown ambient kind '" + kind + "'");
  }

  CheckSettings check(const json& c) const {
    CheckSettings s;
    const std::string where = "check";
    if (!c.is_object()) fail(origin, where, "expected an object");
    for (const auto& [key, value] : c.items()) {
      const std::string w = where + "." + key;
      if (key == "samples") {
        s.samples = integer(value, w);
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) fail(origin, w, "expected a non-negative integer");
        s.seed = value.get<std::uint64_t>();
      } else if (key == "step") {
        s.step = number(value, w);
      } else if (key == "tol_res") {
        s.tol_res = number(value, w);
      } else if (key == "tol_h") {
        s.tol_h = number(value, w);
      } else {
        fail(origin, w, "unknown setting");
      }
    }
    return s;
  }
};

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, "byte " + std::to_string(e.byte), "invalid JSON");
  }
  const Reader r{origin};
  const AmbientSpace amb = r.ambient(r.field(doc, "ambient", "<root>"));

  const json& im = r.field(doc, "immersion", "<root>");
  const std::vector<std::string> params = r.names(r.field(im, "params", "immersion"), "immersion.params");
  const json& comps_v = r.field(im, "components", "immersion");
  if (!comps_v.is_array()) fail(origin, "immersion.components", "expected an array");
  std::vector<Expr> comps;
  for (std::size_t i = 0; i < comps_v.size(); ++i) {
    comps.push_back(r.expression(comps_v[i], "immersion.components[" + std::to_string(i) + "]"));
  }
  const json& dom_v = r.field(im, "domain", "immersion");
  if (!dom_v.is_array()) fail(origin, "immersion.domain", "expected an array of [lo, hi] pairs");
  std::vector<Interval> domain;
  for (std::size_t i = 0; i < dom_v.size(); ++i) {
    const std::string w = "immersion.domain[" + std::to_string(i) + "]";
    if (!dom_v[i].is_array() || dom_v[i].size() != 2) fail(origin, w, "expected [lo, hi]");
    const Interval iv{r.number(dom_v[i][0], w + "[0]"), r.number(dom_v[i][1], w + "[1]")};
    if (!(iv.hi > iv.lo)) fail(origin, w, "empty interval");
    domain.push_back(iv);
  }
  for (const auto& c : comps) {
    for (const auto& v : c.free_variables()) {
      if (std::find(params.begin(), params.end(), v) == params.end()) {
        fail(origin, "immersion.components", "unbound variable '" + v + "'");
      }
    }
  }

  CheckSettings settings;
  if (doc.contains("check")) settings = r.check(doc["check"]);
  try {
    return SpecFile{Immersion(params, amb, comps, domain), settings};
  } catch (const Error& err) {
    fail(origin, "immersion", err.what());
  }
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SpecFileError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path);
}

}  // namespace biharm
