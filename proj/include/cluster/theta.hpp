#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cluster/affine.hpp"
#include "cluster/poly.hpp"
#include "cluster/seeds.hpp"

namespace cluster {

struct ThetaFunction {
  WeightVec label;
  LaurentPoly poly;
};

// Finite combination sum_kappa coeff[kappa] * theta_kappa with coefficients in y only.
struct ThetaCombo {
  std::map<WeightVec, LaurentPoly> terms;
  std::vector<WeightVec> peel_order;
  bool on_dominance_chain = true;  // every label is lambda - 2a nu_c(delta), a >= 0
};

// Arcs of a tube with length 0..k (length 0 is the zero root, length k is delta).
struct Arc {
  int tube = 0;
  int start = 0;
  int length = 0;
  bool is_zero() const { return length == 0; }
  TubeRoot root() const { return TubeRoot{tube, start, length}; }
};
RootVec arc_vector(const Tube& t, const Arc& a);

// Local picture of exchanging gamma out of a maximal compatible set J of one tube.
struct LocalExchange {
  bool maximal = false;
  int beta = 0;        // orbit index of beta
  int beta_prime = 0;  // orbit index of beta'
  Arc phi, phi1, phi2, phi3;  // phi, phi', phi'', phi''' (phi2/phi3 unused when maximal)
  bool gamma_on_first_side = false;  // gamma = phi' + beta + phi'' (second row of the seed table)
  TubeRoot gamma, gamma_prime;
};
LocalExchange local_exchange(int k, const std::vector<TubeRoot>& J, const TubeRoot& gamma);

struct ImaginaryExchangeRecord {
  int ell = 0, m = 0;
  bool product_vacuous = false;  // ell = m = 1, so phi = phi' = 0
  RootVec phi, phi_prime;
  LaurentPoly lhs;
  LaurentPoly term_delta;  // theta_delta * theta_phi * theta_phi'
  LaurentPoly term_phi;    // y^{phi'+beta} theta_phi^2
  LaurentPoly term_phi_prime;  // y^{phi+beta'} theta_phi'^2
};

struct RealExchangeRecord {
  TubeRoot gamma, gamma_prime;
  LaurentPoly lhs;
  LaurentPoly term_plain;  // theta_phi * theta_phi''
  LaurentPoly term_coeff;  // y^{phi''+beta'} theta_phi' * theta_phi'''
};

class ThetaEngine {
 public:
  explicit ThetaEngine(const IntMatrix& B, int bfs_depth = 8, long long height_bound = -1);

  const AffineData& data() const { return a_; }
  const std::vector<Tube>& tubes() const { return tubes_; }
  const ContextPtr& context() const { return ctx_; }
  const IntMatrix& principal_matrix() const { return Bt_; }
  int n() const { return a_.n; }

  LaurentPoly one() const { return LaurentPoly::constant(ctx_, 1); }
  LaurentPoly y_monomial(const RootVec& beta) const;

  // Cluster variable with g-vector nu_c(phi) for a real root phi in the g-vector fan (1 for phi = 0).
  ThetaFunction theta_real(const RootVec& phi);
  ThetaFunction theta_tube_root(const TubeRoot& r);
  ThetaFunction theta_arc(const Arc& a);

  ThetaFunction theta_delta();
  // The three-term formula evaluated with a specific beta in Simples (n >= 3).
  ThetaFunction theta_delta_from(int tube, int index);
  ThetaFunction theta_k_delta(int k);
  ThetaFunction theta_imaginary(const RootVec& phi);
  // Theta function for a label in the imaginary wall or a cluster-variable g-vector.
  ThetaFunction theta_label(const WeightVec& lambda);

  ThetaCombo expand_product(const ThetaFunction& a, const ThetaFunction& b, int budget = 64);
  LaurentPoly reconstruct(const ThetaCombo& c);

  // Throws IdentityViolated if the identity fails.
  ImaginaryExchangeRecord imaginary_exchange(int tube, int i, int j);
  RealExchangeRecord real_exchange(int tube, const std::vector<TubeRoot>& J, const TubeRoot& gamma);

  bool in_imaginary_wall(const WeightVec& lambda) const;
  size_t bfs_seed_count() const { return search_.seed_count(); }

 private:
  AffineData a_;
  std::vector<Tube> tubes_;
  IntMatrix Bt_;
  ContextPtr ctx_;
  ClusterVariableSearch search_;
  int depth_;
  std::map<WeightVec, LaurentPoly> cache_;
  std::map<int, LaurentPoly> kdelta_;
};

// Rank-2 closed forms keyed by (b12, b21); other sign patterns by swapping indices.
LaurentPoly rank2_theta_delta(const IntMatrix& B, const ContextPtr& ctx);

// Replace principal-coefficient y_j by the coefficient monomials of another extension of B.
LaurentPoly specialize_coefficients(const LaurentPoly& p, const IntMatrix& Btilde_target, const ContextPtr& target);

}  // namespace cluster
