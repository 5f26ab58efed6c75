#include "cluster/json_io.hpp"

#include <fstream>

#include "cluster/errors.hpp"
#include "cluster/seeds.hpp"

namespace cluster {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

long long as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) bad(what + " must be an integer");
  return v.get<long long>();
}

std::vector<long long> int_array(const Json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array");
  std::vector<long long> out;
  for (const auto& e : v) out.push_back(as_int(e, what + " entry"));
  return out;
}

}  // namespace

MatrixSpec matrix_from_json(const Json& j) {
  if (!j.is_object()) bad("matrix document must be an object");
  if (!j.contains("n") || !j.contains("matrix")) bad("matrix document needs \"n\" and \"matrix\"");
  MatrixSpec s;
  s.n = static_cast<int>(as_int(j["n"], "n"));
  s.m = j.contains("m") ? static_cast<int>(as_int(j["m"], "m")) : 0;
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad("name must be a string");
    s.name = j["name"].get<std::string>();
  }
  if (s.n < 1 || s.m < 0) bad("n must be positive and m nonnegative");
  const Json& rows = j["matrix"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != s.n + s.m) bad("matrix must have n + m rows");
  std::vector<std::vector<long long>> r;
  for (const auto& row : rows) {
    auto v = int_array(row, "matrix row");
    if (static_cast<int>(v.size()) != s.n) bad("every matrix row must have n entries");
    r.push_back(v);
  }
  s.Btilde = IntMatrix::from_rows(r);
  symmetrizer_inverse(s.B());
  return s;
}

MatrixSpec read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad("cannot parse " + path + ": " + e.what());
  }
  MatrixSpec s = matrix_from_json(j);
  if (s.name.empty()) s.name = path;
  return s;
}

Json matrix_to_json(const IntMatrix& Btilde, int n, const std::string& name) {
  Json j;
  if (!name.empty()) j["name"] = name;
  j["n"] = n;
  j["m"] = Btilde.rows() - n;
  j["matrix"] = Btilde.to_rows();
  return j;
}

Json poly_to_json(const LaurentPoly& p) {
  Json j;
  const auto& ctx = p.context();
  j["vars"] = ctx->names();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["c"] = c.get_str();
    t["e"] = p.exponent_vector(e);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

LaurentPoly poly_from_json(const Json& j, const ContextPtr& ctx) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) bad("polynomial needs \"vars\" and \"terms\"");
  if (!j["vars"].is_array()) bad("vars must be an array");
  std::vector<std::string> vars;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) bad("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  if (vars != ctx->names()) bad("polynomial variables do not match the context");
  LaurentPoly p(ctx);
  if (!j["terms"].is_array()) bad("terms must be an array");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("c") || !t.contains("e")) bad("term needs \"c\" and \"e\"");
    if (!t["c"].is_string()) bad("coefficient must be an integer string");
    Int c;
    if (c.set_str(t["c"].get<std::string>(), 10) != 0) bad("coefficient is not an integer");
    auto e = int_array(t["e"], "exponent");
    if (static_cast<int>(e.size()) != ctx->size()) bad("exponent length mismatch");
    p += LaurentPoly::monomial(ctx, e, c);
  }
  return p;
}

LaurentPoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j["vars"].is_array()) bad("polynomial needs \"vars\"");
  std::vector<std::string> names;
  int n = 0;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) bad("variable names must be strings");
    names.push_back(v.get<std::string>());
    if (!names.back().empty() && names.back()[0] == 'x' && n + 1 == static_cast<int>(names.size())) ++n;
  }
  if (n == 0) bad("polynomial has no cluster variables");
  auto ctx = VarContext::make(n, static_cast<int>(names.size()) - n, names);
  return poly_from_json(j, ctx);
}

Json weight_to_json(const std::vector<long long>& v) { return Json(v); }

Json walls_to_json(const ScatteringDiagram2& d) {
  Json j;
  j["matrix"] = d.B.to_rows();
  j["order"] = d.order;
  j["consistent"] = d.consistent;
  Json walls = Json::array();
  for (const auto& w : d.walls) {
    Json x;
    x["normal"] = w.normal.c;
    x["direction"] = w.dir;
    x["line"] = w.full_line;
    std::vector<std::string> f;
    for (const auto& c : w.f) f.push_back(c.get_str());
    x["f"] = f;
    walls.push_back(x);
  }
  j["walls"] = walls;
  return j;
}

ScatteringDiagram2 walls_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("order") || !j.contains("walls"))
    bad("wall document needs \"matrix\", \"order\" and \"walls\"");
  ScatteringDiagram2 d;
  std::vector<std::vector<long long>> rows;
  for (const auto& r : j["matrix"]) rows.push_back(int_array(r, "matrix row"));
  d.B = IntMatrix::from_rows(rows);
  if (d.B.rows() != 2 || d.B.cols() != 2) bad("wall document matrix must be 2x2");
  d.s = symmetrizer_inverse(d.B);
  d.order = static_cast<int>(as_int(j["order"], "order"));
  d.consistent = j.value("consistent", false);
  for (const auto& x : j["walls"]) {
    Wall2 w;
    w.normal = RootVec(int_array(x.at("normal"), "normal"));
    w.dir = int_array(x.at("direction"), "direction");
    w.full_line = x.value("line", false);
    for (const auto& c : x.at("f")) {
      Int v;
      if (!c.is_string() || v.set_str(c.get<std::string>(), 10) != 0) bad("wall coefficient must be an integer string");
      w.f.push_back(v);
    }
    if (w.normal.size() != 2 || w.dir.size() != 2 || w.f.empty() || w.f[0] != 1) bad("malformed wall");
    d.walls.push_back(w);
  }
  return d;
}

}  // namespace cluster
