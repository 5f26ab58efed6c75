#include "cluster/affine.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cluster/errors.hpp"
#include "cluster/log.hpp"

namespace cluster {

int AffineData::position_in_order(int i) const {
  return static_cast<int>(std::find(order.begin(), order.end(), i) - order.begin());
}

namespace {

std::vector<int> source_to_sink(const IntMatrix& B) {
  int n = B.cols();
  std::vector<int> indeg(n, 0), out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (B(i, j) > 0) ++indeg[j];
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int i = 0; i < n && pick < 0; ++i)
      if (!done[i] && indeg[i] == 0) pick = i;
    if (pick < 0) throw Error(ErrorKind::NotAcyclic, "exchange matrix has an oriented cycle");
    done[pick] = true;
    out.push_back(pick);
    for (int j = 0; j < n; ++j)
      if (B(pick, j) > 0) --indeg[j];
  }
  return out;
}

IntMatrix reflection_root_matrix(const IntMatrix& A, int i) {
  int n = A.cols();
  IntMatrix R = IntMatrix::identity(n);
  for (int j = 0; j < n; ++j) R(i, j) -= A(i, j);
  return R;
}

IntMatrix reflection_weight_matrix(const IntMatrix& A, int i) {
  int n = A.cols();
  IntMatrix R = IntMatrix::identity(n);
  for (int j = 0; j < n; ++j) R(j, i) -= A(j, i);
  return R;
}

}  // namespace

AffineData build_affine_data(const IntMatrix& Btilde) {
  AffineData a;
  a.n = Btilde.cols();
  a.B = Btilde.top(a.n);
  const int n = a.n;
  a.s = symmetrizer_inverse(a.B);
  a.A = IntMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.A(i, j) = i == j ? 2 : -std::llabs(a.B(i, j));
  a.order = source_to_sink(a.B);

  RatMatrix Ar = to_rat(a.A);
  if (determinant(Ar) != 0 || rank(Ar) != n - 1)
    throw Error(ErrorKind::NotAffineType, "Cartan matrix is not singular of corank one");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    RatMatrix sub(idx.size(), std::vector<Rat>(idx.size()));
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c) sub[r][c] = Ar[idx[r]][idx[c]];
    if (determinant(sub) <= 0) throw Error(ErrorKind::NotAffineType, "a proper principal minor is not positive");
  }
  auto ker = kernel(Ar);
  std::vector<long long> d = primitive_integer(ker.at(0));
  if (d[0] < 0)
    for (auto& v : d) v = -v;
  for (auto v : d)
    if (v <= 0) throw Error(ErrorKind::NotAffineType, "kernel vector is not positive");
  a.delta = RootVec(d);

  a.E = IntMatrix(n, n);
  a.E_inv = IntMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a.E(i, j) = i == j ? 1 : neg_part(a.B(i, j));
      a.E_inv(i, j) = i == j ? 1 : neg_part(-a.B(i, j));
    }
  a.omega = a.B;
  a.K = a.A;

  a.C = a.C_inv = a.CW = a.CW_inv = IntMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    a.C = a.C * reflection_root_matrix(a.A, a.order[k]);
    a.C_inv = reflection_root_matrix(a.A, a.order[k]) * a.C_inv;
    a.CW = a.CW * reflection_weight_matrix(a.A, a.order[k]);
    a.CW_inv = reflection_weight_matrix(a.A, a.order[k]) * a.CW_inv;
  }
  return a;
}

long long height(const RootVec& r) {
  long long h = 0;
  for (auto v : r.c) h += v;
  return h;
}

RootVec reflect_root(const AffineData& a, int i, const RootVec& v) {
  RootVec r = v;
  for (int j = 0; j < a.n; ++j) r[i] -= a.A(i, j) * v[j];
  return r;
}

WeightVec reflect_weight(const AffineData& a, int i, const WeightVec& v) {
  WeightVec r = v;
  for (int j = 0; j < a.n; ++j) r[j] -= v[i] * a.A(j, i);
  return r;
}

RootVec coxeter_apply(const AffineData& a, const RootVec& v, int power) {
  RootVec r = v;
  const IntMatrix& M = power >= 0 ? a.C : a.C_inv;
  for (int p = 0; p < std::abs(power); ++p) r = RootVec(M.apply(r.c));
  return r;
}

WeightVec coxeter_apply(const AffineData& a, const WeightVec& v, int power) {
  WeightVec r = v;
  const IntMatrix& M = power >= 0 ? a.CW : a.CW_inv;
  for (int p = 0; p < std::abs(power); ++p) r = WeightVec(M.apply(r.c));
  return r;
}

Rat pairing(const AffineData& a, const WeightVec& lambda, const RootVec& beta) {
  return pair_weight_root(lambda, beta, a.s);
}

CorootVec coroot_of(const AffineData& a, const RootVec& beta) {
  std::vector<Rat> c(a.n);
  for (int i = 0; i < a.n; ++i) c[i] = rat(beta[i], a.s[i]);
  return CorootVec(primitive_integer(c));
}

long long pairing_coroot(const WeightVec& lambda, const CorootVec& c) {
  long long t = 0;
  for (int i = 0; i < lambda.size(); ++i) t += lambda[i] * c[i];
  return t;
}

Rat omega_roots(const AffineData& a, const RootVec& b1, const RootVec& b2) {
  Rat t = 0;
  for (int i = 0; i < a.n; ++i) {
    long long row = 0;
    for (int j = 0; j < a.n; ++j) row += a.B(i, j) * b2[j];
    t += rat(b1[i] * row, a.s[i]);
  }
  return t;
}

WeightVec omega_weight(const AffineData& a, const RootVec& beta) { return WeightVec(a.B.apply(beta.c)); }

std::vector<RootVec> positive_real_roots(const AffineData& a, long long height_bound) {
  std::set<RootVec> seen;
  std::vector<RootVec> queue;
  for (int i = 0; i < a.n; ++i) {
    RootVec r = RootVec::unit(a.n, i);
    if (height(r) <= height_bound && seen.insert(r).second) queue.push_back(r);
  }
  for (size_t q = 0; q < queue.size(); ++q) {
    RootVec r = queue[q];
    for (int i = 0; i < a.n; ++i) {
      long long k = 0;
      for (int j = 0; j < a.n; ++j) k += a.A(i, j) * r[j];
      if (k >= 0) continue;  // reflecting would not raise the height
      RootVec t = reflect_root(a, i, r);
      if (height(t) <= height_bound && seen.insert(t).second) queue.push_back(t);
    }
  }
  return std::vector<RootVec>(seen.begin(), seen.end());
}

std::string TubeRoot::to_string() const {
  return "T" + std::to_string(tube) + "[" + std::to_string(start) + "+" + std::to_string(length) + "]";
}

std::vector<Tube> detect_tubes(const AffineData& a, long long height_bound) {
  long long hd = height(a.delta);
  if (height_bound < 0) height_bound = 4 * hd;
  if (height_bound < hd) throw Error(ErrorKind::HeightBoundTooSmall, "height bound below height(delta)");
  std::vector<RootVec> roots = positive_real_roots(a, height_bound);
  std::set<std::vector<RootVec>> orbits;
  const int max_orbit = 64 * a.n;
  for (const RootVec& r : roots) {
    if (omega_roots(a, a.delta, r) != 0) continue;
    std::vector<RootVec> orbit{r};
    RootVec cur = coxeter_apply(a, r, 1);
    bool positive = true;
    while (cur != r) {
      if (static_cast<int>(orbit.size()) > max_orbit)
        throw Error(ErrorKind::HeightBoundTooSmall, "c-orbit of " + r.to_string() + " did not close");
      for (auto v : cur.c) positive = positive && v >= 0;
      orbit.push_back(cur);
      cur = coxeter_apply(a, cur, 1);
    }
    if (!positive) continue;
    RootVec sum = RootVec::zero(a.n);
    for (const auto& v : orbit) sum += v;
    if (sum != a.delta) continue;
    // Rotate so the lexicographically smallest element comes first.
    auto it = std::min_element(orbit.begin(), orbit.end());
    std::rotate(orbit.begin(), it, orbit.end());
    orbits.insert(orbit);
  }
  std::vector<Tube> tubes;
  for (const auto& o : orbits) tubes.push_back(Tube{o});
  if (a.n >= 3 && tubes.empty())
    throw Error(ErrorKind::HeightBoundTooSmall, "no tube orbit found within the height window");
  if (tubes.size() > 3) throw Error(ErrorKind::HeightBoundTooSmall, "more than three tube orbits found");
  log_debug("detected " + std::to_string(tubes.size()) + " tubes");
  return tubes;
}

RootVec tube_root_vector(const Tube& t, const TubeRoot& r) {
  int k = t.size();
  if (r.length < 1 || r.length >= k) throw Error(ErrorKind::InvalidArgument, "arc length out of range");
  RootVec v = RootVec::zero(t.orbit[0].size());
  for (int i = 0; i < r.length; ++i) v += t.orbit[((r.start + i) % k + k) % k];
  return v;
}

std::vector<int> support(const Tube& t, const TubeRoot& r) {
  std::vector<int> s;
  int k = t.size();
  for (int i = 0; i < r.length; ++i) s.push_back(((r.start + i) % k + k) % k);
  return s;
}

bool compatible(int k, const TubeRoot& r1, const TubeRoot& r2) {
  if (r1.tube != r2.tube) return true;
  auto inside = [k](const TubeRoot& small, const TubeRoot& big) {
    int off = ((small.start - big.start) % k + k) % k;
    return off + small.length <= big.length;
  };
  if (inside(r1, r2) || inside(r2, r1)) return true;
  int g1 = ((r2.start - r1.start - r1.length) % k + k) % k;
  if (g1 + r1.length + r2.length > k) return false;  // overlapping
  int g2 = k - r1.length - r2.length - g1;
  // Overlap also shows up as the second arc starting inside the first.
  int off = ((r2.start - r1.start) % k + k) % k;
  if (off < r1.length) return false;
  return g1 >= 1 && g2 >= 1;
}

bool compatible(const std::vector<Tube>& tubes, const TubeRoot& r1, const TubeRoot& r2) {
  if (r1.tube != r2.tube) return true;
  return compatible(tubes.at(r1.tube).size(), r1, r2);
}

std::vector<TubeRoot> all_arcs(const std::vector<Tube>& tubes, int tube) {
  int k = tubes.at(tube).size();
  std::vector<TubeRoot> out;
  for (int st = 0; st < k; ++st)
    for (int len = 1; len < k; ++len) out.push_back(TubeRoot{tube, st, len});
  return out;
}

WeightVec nu_c(const AffineData& a, const RootVec& phi) {
  for (auto v : phi.c)
    if (v < 0) throw Error(ErrorKind::NegativeInput, "nu_c needs a nonnegative root, got " + phi.to_string());
  std::vector<long long> e = a.E.apply(phi.c);
  for (auto& v : e) v = -v;
  return WeightVec(e);
}

bool nu_c_preimage(const AffineData& a, const WeightVec& w, RootVec& out) {
  RatMatrix E = to_rat(a.E);
  std::vector<Rat> rhs(a.n);
  for (int i = 0; i < a.n; ++i) rhs[i] = rat(-w[i]);
  auto sol = solve_unique(E, rhs);
  if (!sol) return false;
  std::vector<long long> v;
  for (auto& q : *sol) {
    if (q.get_den() != 1 || q < 0) return false;
    v.push_back(q.get_num().get_si());
  }
  out = RootVec(v);
  return true;
}

ClusterExpansion cluster_expansion_imaginary(const AffineData& a, const std::vector<Tube>& tubes, const RootVec& phi) {
  ClusterExpansion out;
  for (auto v : phi.c)
    if (v < 0) throw Error(ErrorKind::NotInImaginaryWall, phi.to_string() + " is not nonnegative");
  if (tubes.empty()) {
    // Only multiples of delta.
    long long m = phi[0] / a.delta[0];
    if (m * a.delta[0] != phi[0] || m * a.delta != phi)
      throw Error(ErrorKind::NotInImaginaryWall, phi.to_string() + " is not a multiple of delta");
    out.m_delta = m;
    return out;
  }
  std::vector<std::pair<int, int>> cols;
  for (int o = 0; o < static_cast<int>(tubes.size()); ++o)
    for (int i = 0; i < tubes[o].size(); ++i) cols.push_back({o, i});
  RatMatrix M(a.n, std::vector<Rat>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < a.n; ++r) M[r][c] = rat(tubes[cols[c].first].orbit[cols[c].second][r]);
  std::vector<Rat> rhs(a.n);
  for (int r = 0; r < a.n; ++r) rhs[r] = rat(phi[r]);
  auto sol = solve_any(M, rhs);
  if (!sol) throw Error(ErrorKind::NotInImaginaryWall, phi.to_string() + " is outside the span of the tubes");
  Rat mdelta = 0;
  std::vector<std::vector<Rat>> prof(tubes.size());
  for (size_t c = 0; c < cols.size(); ++c) prof[cols[c].first].push_back((*sol)[c]);
  for (auto& p : prof) {
    Rat mn = *std::min_element(p.begin(), p.end());
    mdelta += mn;
    for (auto& v : p) v -= mn;
  }
  if (mdelta.get_den() != 1 || mdelta < 0)
    throw Error(ErrorKind::NotInImaginaryWall, phi.to_string() + " needs a non-integral or negative delta multiple");
  out.m_delta = mdelta.get_num().get_si();
  for (int o = 0; o < static_cast<int>(tubes.size()); ++o) {
    int k = tubes[o].size();
    std::vector<long long> w(k);
    for (int i = 0; i < k; ++i) {
      if (prof[o][i].get_den() != 1)
        throw Error(ErrorKind::NotInImaginaryWall, phi.to_string() + " has non-integral tube coordinates");
      w[i] = prof[o][i].get_num().get_si();
    }
    int z = static_cast<int>(std::find(w.begin(), w.end(), 0) - w.begin());
    long long top = *std::max_element(w.begin(), w.end());
    for (long long h = 1; h <= top; ++h) {
      int run_start = -1;
      for (int p = 1; p <= k; ++p) {  // positions z+1 .. z+k-1, then a sentinel at z+k (= z, value 0)
        int idx = (z + p) % k;
        bool on = p < k && w[idx] >= h;
        if (on && run_start < 0) run_start = p;
        if (!on && run_start >= 0) {
          TubeRoot r{o, (z + run_start) % k, p - run_start};
          out.arcs[r] += 1;
          run_start = -1;
        }
      }
    }
  }
  return out;
}

RootVec reconstruct(const std::vector<Tube>& tubes, const AffineData& a, const ClusterExpansion& e) {
  RootVec v = e.m_delta * a.delta;
  for (const auto& [r, m] : e.arcs) v += m * tube_root_vector(tubes.at(r.tube), r);
  return v;
}

bool is_maximal_compatible(int k, const std::vector<TubeRoot>& J) {
  if (static_cast<int>(J.size()) != k - 1) return false;
  for (size_t i = 0; i < J.size(); ++i) {
    if (J[i].length < 1 || J[i].length >= k) return false;
    for (size_t j = i + 1; j < J.size(); ++j) {
      if (J[i].tube != J[j].tube) return false;
      if (J[i].start % k == J[j].start % k && J[i].length == J[j].length) return false;
      if (!compatible(k, J[i], J[j])) return false;
    }
  }
  return true;
}

TubeRoot exchange_partner(int k, const std::vector<TubeRoot>& J, const TubeRoot& gamma) {
  if (!is_maximal_compatible(k, J)) throw Error(ErrorKind::NotMaximal, "index set is not a maximal compatible set");
  if (std::find(J.begin(), J.end(), gamma) == J.end()) throw Error(ErrorKind::NotMember, gamma.to_string());
  std::vector<TubeRoot> found;
  for (int st = 0; st < k; ++st)
    for (int len = 1; len < k; ++len) {
      TubeRoot r{gamma.tube, st, len};
      if (std::find(J.begin(), J.end(), r) != J.end()) continue;
      bool ok = true;
      for (const auto& j : J)
        if (!(j == gamma) && !compatible(k, j, r)) ok = false;
      if (ok) found.push_back(r);
    }
  if (found.size() != 1)
    throw Error(ErrorKind::NotMaximal, "exchange of " + gamma.to_string() + " is not unique");
  return found[0];
}

std::vector<std::vector<TubeRoot>> all_maximal_compatible_sets(int k, int tube) {
  std::vector<TubeRoot> arcs;
  for (int st = 0; st < k; ++st)
    for (int len = 1; len < k; ++len) arcs.push_back(TubeRoot{tube, st, len});
  std::vector<std::vector<TubeRoot>> out;
  std::vector<TubeRoot> cur;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (static_cast<int>(cur.size()) == k - 1) {
      out.push_back(cur);
      return;
    }
    for (size_t i = from; i < arcs.size(); ++i) {
      bool ok = true;
      for (const auto& c : cur) ok = ok && compatible(k, c, arcs[i]);
      if (!ok) continue;
      cur.push_back(arcs[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace cluster
