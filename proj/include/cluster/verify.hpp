#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cluster/json_io.hpp"
#include "cluster/matrix.hpp"
#include "cluster/theta.hpp"

namespace cluster {

struct VerifyOptions {
  int bfs_depth = 8;
  long long height_bound = -1;
  int kmax = 4;
  int order = 8;
  int peel_budget = 64;
  uint64_t seed = 20240611;
  int samples = 50;
  int words = 500;
  int word_length = 10;
  size_t graph_budget = 20000;
};

struct CheckResult {
  std::string identity;
  int checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  bool ok() const { return failures.empty(); }
};

// Identity names accepted by run_identity, sorted.
const std::vector<std::string>& identity_names();
CheckResult run_identity(const IntMatrix& B, const std::string& identity, const VerifyOptions& opt);
CheckResult run_identity(ThetaEngine& engine, const std::string& identity, const VerifyOptions& opt);

// Generators used by the product checks: theta functions of tube roots and of multiples of delta
// whose root vectors have all coordinates <= max_coord.
struct Generator {
  bool imaginary = false;  // a multiple of delta
  int k = 0;               // the multiple, when imaginary
  TubeRoot root;           // otherwise
  RootVec vector;
};
std::vector<Generator> product_generators(ThetaEngine& engine, long long max_coord = 2);

// Roots sum_t sum_i c_{t,i} beta_[i] + m delta with 0 <= c <= max_coeff and 0 <= m <= max_delta.
std::vector<RootVec> imaginary_wall_roots(const ThetaEngine& engine, long long max_coeff, long long max_delta);

Json tube_info_json(ThetaEngine& engine);
Json build_report(ThetaEngine& engine, const std::string& name, const VerifyOptions& opt);
std::string report_text(const Json& report);

}  // namespace cluster
