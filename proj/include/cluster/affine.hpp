#pragma once

#include <map>
#include <string>
#include <vector>

#include "cluster/linalg.hpp"
#include "cluster/matrix.hpp"
#include "cluster/seeds.hpp"

namespace cluster {

struct AffineData {
  int n = 0;
  IntMatrix B;                  // exchange matrix
  std::vector<long long> s;     // s_i = d_i^{-1}
  IntMatrix A;                  // Cartan counterpart
  std::vector<int> order;       // Coxeter word: c = s_{order[0]} ... s_{order[n-1]}
  RootVec delta;
  IntMatrix E;                  // E_c
  IntMatrix E_inv;              // E_{c^{-1}}
  IntMatrix omega;              // omega_c (= B)
  IntMatrix K;                  // K(alpha_i^vee, alpha_j) = a_ij
  IntMatrix C, C_inv;           // c and c^{-1} on simple-root coordinates
  IntMatrix CW, CW_inv;         // c and c^{-1} on weight coordinates (dual action)
  int position_in_order(int i) const;
};

AffineData build_affine_data(const IntMatrix& Btilde);

long long height(const RootVec& r);
RootVec reflect_root(const AffineData& a, int i, const RootVec& v);
WeightVec reflect_weight(const AffineData& a, int i, const WeightVec& v);
RootVec coxeter_apply(const AffineData& a, const RootVec& v, int power);
WeightVec coxeter_apply(const AffineData& a, const WeightVec& v, int power);

// <lambda, beta> with beta in simple-root coordinates.
Rat pairing(const AffineData& a, const WeightVec& lambda, const RootVec& beta);
// Primitive element of the co-root lattice positively proportional to beta, in co-root coordinates.
CorootVec coroot_of(const AffineData& a, const RootVec& beta);
long long pairing_coroot(const WeightVec& lambda, const CorootVec& c);
// omega_c(beta1, beta2) with both arguments given in root coordinates.
Rat omega_roots(const AffineData& a, const RootVec& b1, const RootVec& b2);
// omega_c(., beta) as a weight: the x-exponent of yhat^beta.
WeightVec omega_weight(const AffineData& a, const RootVec& beta);

std::vector<RootVec> positive_real_roots(const AffineData& a, long long height_bound);

struct Tube {
  std::vector<RootVec> orbit;  // beta_[0], ..., beta_[k-1]
  int size() const { return static_cast<int>(orbit.size()); }
};

struct TubeRoot {
  int tube = 0;
  int start = 0;
  int length = 1;
  auto operator<=>(const TubeRoot&) const = default;
  std::string to_string() const;
};

std::vector<Tube> detect_tubes(const AffineData& a, long long height_bound = -1);

RootVec tube_root_vector(const Tube& t, const TubeRoot& r);
std::vector<int> support(const Tube& t, const TubeRoot& r);
bool compatible(int k, const TubeRoot& r1, const TubeRoot& r2);
bool compatible(const std::vector<Tube>& tubes, const TubeRoot& r1, const TubeRoot& r2);
std::vector<TubeRoot> all_arcs(const std::vector<Tube>& tubes, int tube);

WeightVec nu_c(const AffineData& a, const RootVec& phi);
// Inverse of nu_c on weights arising from nonnegative roots; returns false when the preimage is
// not a nonnegative integer vector.
bool nu_c_preimage(const AffineData& a, const WeightVec& w, RootVec& out);

struct ClusterExpansion {
  long long m_delta = 0;
  std::map<TubeRoot, long long> arcs;
};
ClusterExpansion cluster_expansion_imaginary(const AffineData& a, const std::vector<Tube>& tubes, const RootVec& phi);
RootVec reconstruct(const std::vector<Tube>& tubes, const AffineData& a, const ClusterExpansion& e);

// Exchange inside one tube of size k.
TubeRoot exchange_partner(int k, const std::vector<TubeRoot>& J, const TubeRoot& gamma);
bool is_maximal_compatible(int k, const std::vector<TubeRoot>& J);
std::vector<std::vector<TubeRoot>> all_maximal_compatible_sets(int k, int tube = 0);

}  // namespace cluster
