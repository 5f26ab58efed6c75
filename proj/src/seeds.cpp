#include "cluster/seeds.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "cluster/errors.hpp"
#include "cluster/log.hpp"

namespace cluster {

IntMatrix mutate_matrix(const IntMatrix& M, int k) {
  int n = M.cols();
  if (k < 0 || k >= n) throw Error(ErrorKind::IndexOutOfRange, "mutation direction " + std::to_string(k + 1));
  IntMatrix R(M.rows(), n);
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        R(i, j) = -M(i, j);
      } else {
        R(i, j) = M(i, j) + pos_part(-M(i, k)) * M(k, j) + M(i, k) * pos_part(M(k, j));
      }
    }
  }
  return R;
}

IntMatrix mutate_matrix_word(IntMatrix M, const std::vector<int>& word) {
  for (int k : word) M = mutate_matrix(M, k);
  return M;
}

std::vector<long long> symmetrizer_inverse(const IntMatrix& B) {
  int n = B.cols();
  if (B.rows() < n) throw Error(ErrorKind::InvalidArgument, "matrix has fewer rows than columns");
  for (int i = 0; i < n; ++i) {
    if (B(i, i) != 0) throw Error(ErrorKind::NonSkewSymmetrizable, "nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      bool zi = B(i, j) == 0, zj = B(j, i) == 0;
      if (zi != zj || (!zi && (B(i, j) > 0) == (B(j, i) > 0)))
        throw Error(ErrorKind::NonSkewSymmetrizable, "sign pattern at (" + std::to_string(i + 1) + "," +
                                                         std::to_string(j + 1) + ")");
    }
  }
  // Propagate ratios s_j / s_i = -b_ji / b_ij along the connectivity graph.
  std::vector<Rat> s(n, 0);
  for (int root = 0; root < n; ++root) {
    if (s[root] != 0) continue;
    s[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (B(i, j) == 0) continue;
        Rat want = s[i] * rat(-B(j, i), B(i, j));
        if (s[j] == 0) {
          s[j] = want;
          q.push(j);
        } else if (s[j] != want) {
          throw Error(ErrorKind::NonSkewSymmetrizable, "inconsistent symmetrizer");
        }
      }
    }
  }
  // d_i = 1/s_i; require s_i integral with gcd 1 after scaling.
  mpz_class l = 1;
  for (auto& v : s) l = lcm(l, v.get_den());
  std::vector<mpz_class> si;
  mpz_class g = 0;
  for (auto& v : s) {
    si.push_back(v.get_num() * (l / v.get_den()));
    g = gcd(g, si.back());
  }
  std::vector<long long> out;
  for (auto& v : si) out.push_back(mpz_class(v / g).get_si());
  return out;
}

IntMatrix principal_extension(const IntMatrix& B) {
  int n = B.cols();
  IntMatrix R(2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = B(i, j);
  for (int i = 0; i < n; ++i) R(n + i, i) = 1;
  return R;
}

WeightVec mutation_map_eta(const IntMatrix& B, const std::vector<int>& word, const WeightVec& v) {
  int n = B.cols();
  if (v.size() != n) throw Error(ErrorKind::InvalidArgument, "weight length");
  IntMatrix M(n + 1, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = B(j, i);
  for (int j = 0; j < n; ++j) M(n, j) = v[j];
  M = mutate_matrix_word(M, word);
  return WeightVec(M.row(n));
}

Rat pair_weight_root(const WeightVec& w, const RootVec& r, const std::vector<long long>& s) {
  Rat t = 0;
  for (int i = 0; i < w.size(); ++i) t += rat(w[i] * r[i], s[i]);
  return t;
}

ContextPtr make_context(int n, int m) { return VarContext::make(n, m); }

Seed initial_seed(const IntMatrix& Btilde) {
  int n = Btilde.cols();
  int m = Btilde.rows() - n;
  symmetrizer_inverse(Btilde.top(n));
  ContextPtr ctx = make_context(n, m);
  Seed s;
  s.initial = Btilde;
  s.matrix = Btilde;
  for (int i = 0; i < n; ++i) s.cluster.push_back(LaurentPoly::variable(ctx, i));
  return s;
}

LaurentPoly coefficient_monomial(const Seed& s, int j) {
  int n = s.n();
  std::vector<long long> e(n + s.m(), 0);
  for (int i = 0; i < s.m(); ++i) e[n + i] = s.matrix(n + i, j);
  return LaurentPoly::monomial(s.context(), e);
}

int column_sign(const IntMatrix& M, int k) {
  int n = M.cols();
  bool pos = false, neg = false;
  for (int i = n; i < M.rows(); ++i) {
    pos = pos || M(i, k) > 0;
    neg = neg || M(i, k) < 0;
  }
  if (pos && neg) throw Error(ErrorKind::UnsignedColumn, "column " + std::to_string(k + 1));
  return neg ? -1 : 1;
}

Seed mutate_seed(const Seed& s, int k) {
  int n = s.n();
  if (k < 0 || k >= n) throw Error(ErrorKind::IndexOutOfRange, "mutation direction " + std::to_string(k + 1));
  int sg = column_sign(s.matrix, k);
  const ContextPtr& ctx = s.context();
  LaurentPoly neg = LaurentPoly::constant(ctx, 1), pos = LaurentPoly::constant(ctx, 1);
  for (int i = 0; i < n; ++i) {
    long long b = s.matrix(i, k);
    if (b > 0) pos *= s.cluster[i].pow(static_cast<unsigned>(b));
    if (b < 0) neg *= s.cluster[i].pow(static_cast<unsigned>(-b));
  }
  LaurentPoly yk = coefficient_monomial(s, k);
  LaurentPoly rhs = neg + yk * pos;
  if (sg < 0) rhs *= yk.monomial_inverse();
  Seed out = s;
  out.cluster[k] = exact_div(rhs, s.cluster[k]);
  out.matrix = mutate_matrix(s.matrix, k);
  out.history.push_back(k);
  return out;
}

Seed mutate_seed_word(Seed s, const std::vector<int>& word) {
  for (int k : word) s = mutate_seed(s, k);
  return s;
}

WeightVec g_vector_of(const Seed& s, int i) {
  if (i < 0 || i >= s.n()) throw Error(ErrorKind::IndexOutOfRange, "cluster index");
  return WeightVec(pointed_form(s.cluster[i], s.initial).g);
}

RootVec denominator_vector_of(const LaurentPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no denominator vector");
  int n = p.context()->n();
  std::vector<long long> d(n);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    for (int i = 0; i < n; ++i) d[i] = first ? -e[i] : std::max<long long>(d[i], -e[i]);
    first = false;
  }
  return RootVec(d);
}

LaurentPoly clear(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  const ContextPtr& ctx = p.context();
  Exponent q = zero_exponent();
  for (const auto& [e, c] : p.terms())
    for (int i = ctx->n(); i < ctx->size(); ++i) q[i] = std::max(q[i], -e[i]);
  return p.shifted(q);
}

std::string seed_key(const Seed& s) {
  std::vector<std::string> vars;
  for (const auto& v : s.cluster) vars.push_back(v.to_string());
  std::vector<int> order(vars.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vars[a] < vars[b]; });
  // Matrix entries permuted to the sorted cluster order.
  std::string key;
  for (int a : order) key += vars[a] + "|";
  key += "#";
  for (int i = 0; i < s.matrix.rows(); ++i) {
    int ri = i < s.n() ? order[i] : i;
    for (int j : order) key += std::to_string(s.matrix(ri, j)) + ",";
  }
  return key;
}

ClusterVariableSearch::ClusterVariableSearch(const IntMatrix& B) : Bt_(principal_extension(B)) {
  Seed s0 = initial_seed(Bt_);
  ctx_ = s0.context();
  seen_.insert(seed_key(s0));
  index_seed(s0);
  frontier_.push_back(std::move(s0));
}

void ClusterVariableSearch::index_seed(const Seed& s) {
  for (int i = 0; i < s.n(); ++i) {
    // With principal coefficients the g-vector is the x-part of the unique coefficient-free term.
    std::vector<long long> g;
    for (const auto& [e, c] : s.cluster[i].terms()) {
      bool free = true;
      for (int j = s.n(); j < 2 * s.n(); ++j) free = free && e[j] == 0;
      if (free) {
        g.assign(e.begin(), e.begin() + s.n());
        break;
      }
    }
    if (g.empty()) throw Error(ErrorKind::NotPointed, s.cluster[i].to_string());
    by_g_.try_emplace(g, s.cluster[i]);
  }
}

void ClusterVariableSearch::expand_one_level() {
  std::vector<Seed> next;
  for (const Seed& s : frontier_) {
    for (int k = 0; k < s.n(); ++k) {
      if (!s.history.empty() && s.history.back() == k) continue;
      Seed t = mutate_seed(s, k);
      if (!seen_.insert(seed_key(t)).second) continue;
      index_seed(t);
      next.push_back(std::move(t));
    }
  }
  frontier_ = std::move(next);
  ++depth_;
  log_debug("bfs depth " + std::to_string(depth_) + ": " + std::to_string(seen_.size()) + " seeds, " +
            std::to_string(by_g_.size()) + " variables");
}

std::optional<LaurentPoly> ClusterVariableSearch::lookup(const WeightVec& target) const {
  auto it = by_g_.find(target.c);
  if (it == by_g_.end()) return std::nullopt;
  return it->second;
}

const LaurentPoly& ClusterVariableSearch::find(const WeightVec& target, int depth) {
  while (true) {
    auto it = by_g_.find(target.c);
    if (it != by_g_.end()) return it->second;
    if (depth_ >= depth || frontier_.empty())
      throw Error(ErrorKind::NotFound, "g-vector " + target.to_string() + " within depth " + std::to_string(depth));
    expand_one_level();
  }
}

LaurentPoly find_cluster_variable_by_gvector(const IntMatrix& B, const WeightVec& target, int depth) {
  ClusterVariableSearch search(B);
  return search.find(target, depth);
}

}  // namespace cluster
