#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cluster/affine.hpp"
#include "cluster/poly.hpp"
#include "cluster/theta.hpp"

namespace cluster {

// Laurent monomial in the tropical variables; addition is the componentwise minimum.
struct TropMonomial {
  std::vector<long long> e;

  static TropMonomial one(int nvars) { return TropMonomial{std::vector<long long>(nvars, 0)}; }
  static TropMonomial var(int nvars, int i) {
    TropMonomial t = one(nvars);
    t.e.at(i) = 1;
    return t;
  }
  bool is_one() const;
  TropMonomial operator*(const TropMonomial& o) const;
  TropMonomial operator/(const TropMonomial& o) const;
  TropMonomial pow(long long k) const;
  bool operator==(const TropMonomial& o) const = default;
  auto operator<=>(const TropMonomial& o) const = default;
  std::string to_string(const std::vector<std::string>& names) const;
};

TropMonomial trop_add(const TropMonomial& a, const TropMonomial& b);

// Variable layout shared by all seeds of one exchange graph: cluster positions, then z_{o,i}, then z_*.
struct GCAFrame {
  std::vector<int> tube_ids;     // tubes covered, in order
  std::vector<int> tube_sizes;   // sizes of those tubes
  std::vector<int> z_offset;     // first z index of each covered tube
  int rank = 0;                  // number of cluster positions
  int star = 0;                  // index of z_* among tropical variables
  int ntrop = 0;
  ContextPtr ctx;
  std::vector<std::string> trop_names;
  int local(int tube) const;     // index into tube_ids, or -1
  int z_index(int tube, int i) const;
};
using FramePtr = std::shared_ptr<const GCAFrame>;

struct GCASeed {
  FramePtr frame;
  std::vector<TubeRoot> J;                      // label of each cluster position
  std::vector<LaurentPoly> x;                   // cluster variables in the initial cluster
  std::vector<std::vector<TropMonomial>> p;     // p[gamma] = (p_{gamma;0}, ..., p_{gamma;d_gamma})
  IntMatrix B;
  std::vector<int> d;
  int size() const { return static_cast<int>(J.size()); }
};

// The frame for one tube (size k) or for several tubes (block-diagonal product seed).
FramePtr make_frame(const std::vector<Tube>& tubes, const std::vector<int>& which);
// Seed attached to J (the union of maximal compatible sets of the frame's tubes), in the given order.
GCASeed build_tube_seed(const FramePtr& frame, const std::vector<TubeRoot>& J);
GCASeed build_tube_seed(const std::vector<Tube>& tubes, int tube, const std::vector<TubeRoot>& J);
// The seed for J_o = {beta_[1,j] : j = 1..k-1} in each covered tube.
std::vector<TubeRoot> standard_maximal_set(int tube, int k);

// Right side of the exchange relation at position g, written in the formal cluster variables of
// the frame context (the first `rank` variables) with tropical coefficients.
LaurentPoly exchange_rhs(const GCASeed& s, int g);
LaurentPoly trop_to_poly(const FramePtr& frame, const TropMonomial& t);

GCASeed gca_mutate(const GCASeed& s, int g);
bool is_normalized(const GCASeed& s);
// The ratio identity p'_{j;l}/p'_{j;0} after mutating s at g, for every j != g.
bool ratio_identity_holds(const GCASeed& before, const GCASeed& after, int g);
std::string gca_seed_key(const GCASeed& s);
bool same_seed_data(const GCASeed& a, const GCASeed& b);  // B, p, d, J equal position by position

struct ExchangeGraph {
  std::vector<GCASeed> vertices;
  std::vector<std::pair<int, int>> edges;
  std::map<TubeRoot, LaurentPoly> variables;
  std::vector<std::string> failures;
  bool regular = true;
  bool ok() const { return failures.empty(); }
};

ExchangeGraph enumerate_exchange_graph(const GCASeed& s0, size_t budget = 20000);

struct TOCheckReport {
  int relations_checked = 0;
  int variables_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Push every exchange relation and every cluster variable of the graph through t_o.
// With coefficient_free the z_beta go to 1 and the theta functions are taken with y = 1.
TOCheckReport t_o_check(ThetaEngine& engine, const ExchangeGraph& g, bool coefficient_free = false);

}  // namespace cluster
