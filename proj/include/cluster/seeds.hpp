#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cluster/linalg.hpp"
#include "cluster/matrix.hpp"
#include "cluster/poly.hpp"

namespace cluster {

struct WeightTag {};
struct RootTag {};
struct CoweightTag {};
struct CorootTag {};

// Integer coordinate vector in a tagged basis (rho_i, alpha_i, rho_i^vee, alpha_i^vee).
template <class Tag>
struct LatticeVec {
  std::vector<long long> c;

  LatticeVec() = default;
  explicit LatticeVec(std::vector<long long> v) : c(std::move(v)) {}
  static LatticeVec zero(int n) { return LatticeVec(std::vector<long long>(n, 0)); }
  static LatticeVec unit(int n, int i) {
    LatticeVec v = zero(n);
    v.c[i] = 1;
    return v;
  }
  int size() const { return static_cast<int>(c.size()); }
  long long operator[](int i) const { return c[i]; }
  long long& operator[](int i) { return c[i]; }
  bool is_zero() const {
    for (auto v : c)
      if (v) return false;
    return true;
  }
  LatticeVec& operator+=(const LatticeVec& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  LatticeVec& operator-=(const LatticeVec& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend LatticeVec operator+(LatticeVec a, const LatticeVec& b) { return a += b; }
  friend LatticeVec operator-(LatticeVec a, const LatticeVec& b) { return a -= b; }
  friend LatticeVec operator*(long long k, LatticeVec a) {
    for (auto& v : a.c) v *= k;
    return a;
  }
  LatticeVec operator-() const { return -1 * *this; }
  bool operator==(const LatticeVec& o) const = default;
  auto operator<=>(const LatticeVec& o) const = default;
  std::string to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }
};

using WeightVec = LatticeVec<WeightTag>;
using RootVec = LatticeVec<RootTag>;
using CoweightVec = LatticeVec<CoweightTag>;
using CorootVec = LatticeVec<CorootTag>;

// --- matrices --------------------------------------------------------------

// Matrix mutation at k (0-based) applied to every row of an (n+m) x n matrix.
IntMatrix mutate_matrix(const IntMatrix& M, int k);
IntMatrix mutate_matrix_word(IntMatrix M, const std::vector<int>& word);

// Integers s_i = d_i^{-1} with s_j b_ij = -s_i b_ji and gcd 1. Throws NonSkewSymmetrizable.
std::vector<long long> symmetrizer_inverse(const IntMatrix& B);

// [B; I] for a square B.
IntMatrix principal_extension(const IntMatrix& B);

// Exchange-matrix mutation map: append v below B^T, mutate along `word` (applied left to right),
// read the appended row.
WeightVec mutation_map_eta(const IntMatrix& B, const std::vector<int>& word, const WeightVec& v);

// Pairing of a weight with a root given in simple-root coordinates (uses d_i).
Rat pair_weight_root(const WeightVec& w, const RootVec& r, const std::vector<long long>& s);

// --- seeds -----------------------------------------------------------------

struct Seed {
  IntMatrix initial;  // extended matrix of the initial seed (defines yhat for pointedness)
  IntMatrix matrix;   // current extended matrix
  std::vector<LaurentPoly> cluster;
  std::vector<int> history;  // mutation directions in application order

  int n() const { return matrix.cols(); }
  int m() const { return matrix.rows() - matrix.cols(); }
  const ContextPtr& context() const { return cluster.front().context(); }
};

ContextPtr make_context(int n, int m);
Seed initial_seed(const IntMatrix& Btilde);

// y_j = prod u_i^{b_{n+i,j}} for the current matrix.
LaurentPoly coefficient_monomial(const Seed& s, int j);

// Sign of the bottom column (+1 for an all-zero column). Throws UnsignedColumn.
int column_sign(const IntMatrix& M, int k);

Seed mutate_seed(const Seed& s, int k);
Seed mutate_seed_word(Seed s, const std::vector<int>& word);

WeightVec g_vector_of(const Seed& s, int i);
RootVec denominator_vector_of(const LaurentPoly& p);
LaurentPoly clear(const LaurentPoly& p);

// Canonical key identifying a seed up to relabeling of the cluster.
std::string seed_key(const Seed& s);

// Breadth-first exploration of the principal-coefficient exchange graph, indexing cluster
// variables by g-vector. Reused across queries.
class ClusterVariableSearch {
 public:
  explicit ClusterVariableSearch(const IntMatrix& B);
  // Throws NotFound if the target is not reached within `depth`.
  const LaurentPoly& find(const WeightVec& target, int depth);
  std::optional<LaurentPoly> lookup(const WeightVec& target) const;
  int explored_depth() const { return depth_; }
  size_t seed_count() const { return seen_.size(); }
  const IntMatrix& principal_matrix() const { return Bt_; }
  const ContextPtr& context() const { return ctx_; }

 private:
  void expand_one_level();
  void index_seed(const Seed& s);

  IntMatrix Bt_;
  ContextPtr ctx_;
  std::vector<Seed> frontier_;
  std::set<std::string> seen_;
  std::map<std::vector<long long>, LaurentPoly> by_g_;
  int depth_ = 0;
};

LaurentPoly find_cluster_variable_by_gvector(const IntMatrix& B, const WeightVec& target, int depth = 8);

}  // namespace cluster
