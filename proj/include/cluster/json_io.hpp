#pragma once

#include <json.hpp>
#include <string>

#include "cluster/matrix.hpp"
#include "cluster/poly.hpp"
#include "cluster/scatter2.hpp"

namespace cluster {

using Json = nlohmann::ordered_json;

// Extended exchange matrix read from {"n": n, "m": m, "matrix": [[...], ...]} with n + m rows.
struct MatrixSpec {
  std::string name;
  int n = 0;
  int m = 0;
  IntMatrix Btilde;
  IntMatrix B() const { return Btilde.top(n); }
};

// Throws Error(InvalidArgument) on malformed input.
MatrixSpec matrix_from_json(const Json& j);
MatrixSpec read_matrix_file(const std::string& path);
Json matrix_to_json(const IntMatrix& Btilde, int n, const std::string& name = "");

Json poly_to_json(const LaurentPoly& p);
// Variables named in "vars" must match the context names.
LaurentPoly poly_from_json(const Json& j, const ContextPtr& ctx);
// Builds a context from "vars": names beginning with 'x' are cluster variables, the rest tropical.
LaurentPoly poly_from_json(const Json& j);

Json weight_to_json(const std::vector<long long>& v);
Json walls_to_json(const ScatteringDiagram2& d);
ScatteringDiagram2 walls_from_json(const Json& j);

}  // namespace cluster
