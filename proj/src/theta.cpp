#include "cluster/theta.hpp"

#include <algorithm>

#include "cluster/errors.hpp"
#include "cluster/log.hpp"

namespace cluster {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

std::vector<int> support_of(int k, const TubeRoot& r) {
  std::vector<int> s;
  for (int i = 0; i < r.length; ++i) s.push_back(mod(r.start + i, k));
  std::sort(s.begin(), s.end());
  return s;
}

bool strictly_inside(int k, const TubeRoot& small, const TubeRoot& big) {
  if (small.length >= big.length) return false;
  int off = mod(small.start - big.start, k);
  return off + small.length <= big.length;
}

// The unique element of supp(psi) not covered by smaller roots of J inside psi.
int uncovered(int k, const std::vector<TubeRoot>& J, const TubeRoot& psi) {
  std::vector<bool> covered(k, false);
  for (const auto& chi : J)
    if (strictly_inside(k, chi, psi))
      for (int e : support_of(k, chi)) covered[e] = true;
  std::vector<int> out;
  for (int e : support_of(k, psi))
    if (!covered[e]) out.push_back(e);
  if (out.size() != 1) throw Error(ErrorKind::NotMaximal, "root " + psi.to_string() + " has no unique uncovered element");
  return out[0];
}

void check_equal(const LaurentPoly& lhs, const LaurentPoly& rhs, const std::string& what) {
  if (lhs != rhs)
    throw Error(ErrorKind::IdentityViolated,
                what + " fails: lhs = " + lhs.to_string() + " ; rhs = " + rhs.to_string());
}

}  // namespace

RootVec arc_vector(const Tube& t, const Arc& a) {
  RootVec v = RootVec::zero(t.orbit.at(0).size());
  for (int i = 0; i < a.length; ++i) v += t.orbit[mod(a.start + i, t.size())];
  return v;
}

LocalExchange local_exchange(int k, const std::vector<TubeRoot>& J, const TubeRoot& gamma) {
  LocalExchange le;
  le.gamma = gamma;
  le.gamma_prime = exchange_partner(k, J, gamma);
  const int o = gamma.tube;
  if (gamma.length == k - 1) {
    le.maximal = true;
    le.beta = mod(gamma.start - 1, k);
    le.beta_prime = uncovered(k, J, gamma);
    int off = mod(le.beta_prime - gamma.start, k);
    le.phi = Arc{o, mod(gamma.start, k), off};
    le.phi1 = Arc{o, mod(le.beta_prime + 1, k), k - 2 - off};
    return le;
  }
  const TubeRoot* parent = nullptr;
  for (const auto& psi : J)
    if (strictly_inside(k, gamma, psi) && (!parent || psi.length < parent->length)) parent = &psi;
  if (!parent) throw Error(ErrorKind::NotMaximal, "no larger root above " + gamma.to_string());
  const TubeRoot phi = *parent;
  int up = uncovered(k, J, phi), ug = uncovered(k, J, gamma);
  int op = mod(up - phi.start, k), og = mod(ug - phi.start, k);
  int ob = std::min(op, og), obp = std::max(op, og);
  le.beta = mod(phi.start + ob, k);
  le.beta_prime = mod(phi.start + obp, k);
  le.phi = Arc{o, mod(phi.start, k), phi.length};
  le.phi1 = Arc{o, mod(phi.start, k), ob};
  le.phi2 = Arc{o, mod(phi.start + ob + 1, k), obp - ob - 1};
  le.phi3 = Arc{o, mod(phi.start + obp + 1, k), phi.length - obp - 1};
  le.gamma_on_first_side = ug == le.beta;
  return le;
}

ThetaEngine::ThetaEngine(const IntMatrix& B, int bfs_depth, long long height_bound)
    : a_(build_affine_data(B.top(B.cols()))),
      tubes_(detect_tubes(a_, height_bound)),
      Bt_(principal_extension(a_.B)),
      search_(a_.B),
      depth_(bfs_depth) {
  ctx_ = search_.context();
}

LaurentPoly ThetaEngine::y_monomial(const RootVec& beta) const {
  std::vector<long long> e(2 * a_.n, 0);
  for (int i = 0; i < a_.n; ++i) e[a_.n + i] = beta[i];
  return LaurentPoly::monomial(ctx_, e);
}

ThetaFunction ThetaEngine::theta_real(const RootVec& phi) {
  if (phi.is_zero()) return {WeightVec::zero(a_.n), one()};
  WeightVec label = nu_c(a_, phi);
  auto it = cache_.find(label);
  if (it != cache_.end()) return {label, it->second};
  LaurentPoly p = search_.find(label, depth_);
  cache_.emplace(label, p);
  return {label, p};
}

ThetaFunction ThetaEngine::theta_tube_root(const TubeRoot& r) {
  return theta_real(tube_root_vector(tubes_.at(r.tube), r));
}

ThetaFunction ThetaEngine::theta_arc(const Arc& a) {
  if (a.is_zero()) return {WeightVec::zero(a_.n), one()};
  int k = tubes_.at(a.tube).size();
  if (a.length == k) return theta_delta();
  return theta_tube_root(a.root());
}

ThetaFunction ThetaEngine::theta_delta() {
  if (a_.n == 2) {
    WeightVec label = nu_c(a_, a_.delta);
    auto it = cache_.find(label);
    if (it != cache_.end()) return {label, it->second};
    LaurentPoly p = rank2_theta_delta(a_.B, ctx_);
    cache_.emplace(label, p);
    return {label, p};
  }
  if (tubes_.empty()) throw Error(ErrorKind::NotFound, "no tube available for the delta formula");
  return theta_delta_from(0, 0);
}

ThetaFunction ThetaEngine::theta_delta_from(int tube, int index) {
  const Tube& t = tubes_.at(tube);
  const int k = t.size();
  const RootVec& beta = t.orbit.at(index);
  const RootVec& cbeta = t.orbit[mod(index + 1, k)];
  const RootVec& cinv_beta = t.orbit[mod(index - 1, k)];
  const RootVec& d = a_.delta;
  LaurentPoly p = theta_real(beta).poly * theta_real(d - beta).poly -
                  y_monomial(beta) * theta_real(d - beta - cinv_beta).poly -
                  y_monomial(cbeta) * theta_real(d - beta - cbeta).poly;
  return {nu_c(a_, d), p};
}

ThetaFunction ThetaEngine::theta_k_delta(int k) {
  if (k <= 0) throw Error(ErrorKind::InvalidArgument, "theta_k_delta needs k >= 1");
  WeightVec label = k * nu_c(a_, a_.delta);
  auto it = kdelta_.find(k);
  if (it != kdelta_.end()) return {label, it->second};
  LaurentPoly p;
  LaurentPoly t1 = theta_delta().poly;
  if (k == 1) {
    p = t1;
  } else if (k == 2) {
    p = t1 * t1 - y_monomial(a_.delta).scaled(2);
  } else {
    p = theta_k_delta(k - 1).poly * t1 - y_monomial(a_.delta) * theta_k_delta(k - 2).poly;
  }
  kdelta_.emplace(k, p);
  return {label, p};
}

ThetaFunction ThetaEngine::theta_imaginary(const RootVec& phi) {
  ClusterExpansion e = cluster_expansion_imaginary(a_, tubes_, phi);
  WeightVec label = nu_c(a_, phi);
  auto it = cache_.find(label);
  if (it != cache_.end()) return {label, it->second};
  LaurentPoly p = e.m_delta > 0 ? theta_k_delta(static_cast<int>(e.m_delta)).poly : one();
  for (const auto& [r, mult] : e.arcs) p *= theta_tube_root(r).poly.pow(static_cast<unsigned>(mult));
  cache_.emplace(label, p);
  return {label, p};
}

bool ThetaEngine::in_imaginary_wall(const WeightVec& lambda) const {
  RootVec phi;
  if (!nu_c_preimage(a_, lambda, phi)) return false;
  try {
    cluster_expansion_imaginary(a_, tubes_, phi);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInImaginaryWall) return false;
    throw;
  }
}

ThetaFunction ThetaEngine::theta_label(const WeightVec& lambda) {
  if (lambda.is_zero()) return {lambda, one()};
  auto it = cache_.find(lambda);
  if (it != cache_.end()) return {lambda, it->second};
  RootVec phi;
  if (in_imaginary_wall(lambda) && nu_c_preimage(a_, lambda, phi)) return theta_imaginary(phi);
  LaurentPoly p = search_.find(lambda, depth_);
  cache_.emplace(lambda, p);
  return {lambda, p};
}

ThetaCombo ThetaEngine::expand_product(const ThetaFunction& a, const ThetaFunction& b, int budget) {
  ThetaCombo out;
  const int n = a_.n;
  LaurentPoly rem = a.poly * b.poly;
  WeightVec lambda = a.label + b.label;
  WeightVec nd = nu_c(a_, a_.delta);
  int steps = 0;
  while (!rem.is_zero()) {
    if (steps++ >= budget)
      throw Error(ErrorKind::NonTerminating, "theta peeling exceeded budget " + std::to_string(budget) +
                                                 "; remainder " + rem.to_string());
    // With nonnegative structure constants the y-lowest term is the pointed term of some theta.
    const Exponent* best = nullptr;
    long long best_deg = 0;
    for (const auto& [e, c] : rem.terms()) {
      long long deg = 0;
      for (int i = n; i < 2 * n; ++i) deg += e[i];
      if (!best || deg < best_deg) {
        best = &e;
        best_deg = deg;
      }
    }
    Exponent e = *best;
    Int c = rem.coeff(e);
    if (c < 0) throw Error(ErrorKind::IdentityViolated, "negative coefficient while peeling: " + rem.to_string());
    std::vector<long long> kappa(n), ycoef(2 * n, 0);
    for (int i = 0; i < n; ++i) kappa[i] = e[i];
    for (int i = n; i < 2 * n; ++i) ycoef[i] = e[i];
    WeightVec kv(kappa);
    LaurentPoly mono = LaurentPoly::monomial(ctx_, ycoef, c);
    ThetaFunction tk = theta_label(kv);
    rem -= mono * tk.poly;
    auto [slot, fresh] = out.terms.try_emplace(kv, LaurentPoly(ctx_));
    slot->second += mono;
    if (fresh) out.peel_order.push_back(kv);
    log_debug("peeled " + kv.to_string() + " with coefficient " + mono.to_string());
  }
  for (const auto& kv : out.peel_order) {
    WeightVec diff = lambda - kv;
    bool ok = false;
    for (int i = 0; i < n; ++i) {
      if (nd[i] == 0) continue;
      if (diff[i] % (2 * nd[i]) != 0) break;
      long long q = diff[i] / (2 * nd[i]);
      ok = q >= 0 && diff == (2 * q) * nd;
      break;
    }
    out.on_dominance_chain = out.on_dominance_chain && ok;
  }
  return out;
}

LaurentPoly ThetaEngine::reconstruct(const ThetaCombo& c) {
  LaurentPoly s(ctx_);
  for (const auto& [kv, coef] : c.terms) s += coef * theta_label(kv).poly;
  return s;
}

ImaginaryExchangeRecord ThetaEngine::imaginary_exchange(int tube, int i, int j) {
  const Tube& t = tubes_.at(tube);
  const int k = t.size();
  i = mod(i, k);
  j = mod(j, k);
  if (i == j) throw Error(ErrorKind::InvalidArgument, "imaginary exchange needs distinct orbit elements");
  ImaginaryExchangeRecord r;
  r.ell = mod(j - i, k);
  r.m = mod(i - j, k);
  r.product_vacuous = r.ell == 1 && r.m == 1;
  Arc phi{tube, mod(i + 1, k), r.ell - 1}, phip{tube, mod(j + 1, k), r.m - 1};
  r.phi = arc_vector(t, phi);
  r.phi_prime = arc_vector(t, phip);
  const RootVec& beta = t.orbit[i];
  const RootVec& betap = t.orbit[j];
  LaurentPoly tphi = theta_arc(phi).poly, tphip = theta_arc(phip).poly;
  r.lhs = theta_arc(Arc{tube, mod(i + 1, k), k - 1}).poly * theta_arc(Arc{tube, mod(j + 1, k), k - 1}).poly;
  r.term_delta = theta_delta().poly * tphi * tphip;
  r.term_phi = y_monomial(r.phi_prime + beta) * tphi * tphi;
  r.term_phi_prime = y_monomial(r.phi + betap) * tphip * tphip;
  check_equal(r.lhs, r.term_delta + r.term_phi + r.term_phi_prime,
              "imaginary exchange for orbit elements " + std::to_string(i) + "," + std::to_string(j));
  return r;
}

RealExchangeRecord ThetaEngine::real_exchange(int tube, const std::vector<TubeRoot>& J, const TubeRoot& gamma) {
  const Tube& t = tubes_.at(tube);
  LocalExchange le = local_exchange(t.size(), J, gamma);
  if (le.maximal) throw Error(ErrorKind::InvalidArgument, gamma.to_string() + " is maximal; the exchange is imaginary");
  RealExchangeRecord r;
  r.gamma = gamma;
  r.gamma_prime = le.gamma_prime;
  r.lhs = theta_tube_root(gamma).poly * theta_tube_root(le.gamma_prime).poly;
  r.term_plain = theta_arc(le.phi).poly * theta_arc(le.phi2).poly;
  r.term_coeff = y_monomial(arc_vector(t, le.phi2) + t.orbit[le.beta_prime]) * theta_arc(le.phi1).poly *
                 theta_arc(le.phi3).poly;
  check_equal(r.lhs, r.term_plain + r.term_coeff, "real exchange of " + gamma.to_string());
  return r;
}

LaurentPoly rank2_theta_delta(const IntMatrix& B, const ContextPtr& ctx) {
  if (B.cols() != 2 || ctx->n() != 2 || ctx->m() != 2)
    throw Error(ErrorKind::InvalidArgument, "rank-2 closed form needs a 2x2 matrix and principal coefficients");
  long long b12 = B(0, 1), b21 = B(1, 0);
  bool swap = b12 < 0;
  if (swap) std::swap(b12, b21);
  auto mono = [&](long long x1, long long x2, long long y1, long long y2, long c = 1) {
    if (swap) {
      std::swap(x1, x2);
      std::swap(y1, y2);
    }
    return LaurentPoly::monomial(ctx, std::vector<long long>{x1, x2, y1, y2}, Int(c));
  };
  LaurentPoly num(ctx), den(ctx);
  if (b12 == 2 && b21 == -2) {
    num = mono(0, 2, 0, 0) + mono(0, 0, 1, 0) + mono(2, 0, 1, 1);
    den = mono(1, 1, 0, 0);
  } else if (b12 == 4 && b21 == -1) {
    num = mono(0, 2, 0, 0) + mono(0, 1, 1, 0, 2) + mono(0, 0, 2, 0) + mono(4, 0, 2, 1);
    den = mono(2, 1, 0, 0);
  } else if (b12 == 1 && b21 == -4) {
    num = mono(0, 4, 0, 0) + mono(0, 0, 1, 0) + mono(1, 0, 1, 1, 2) + mono(2, 0, 1, 2);
    den = mono(1, 2, 0, 0);
  } else {
    throw Error(ErrorKind::NotAffineType, "no rank-2 closed form for " + B.to_string());
  }
  return exact_div(num, den);
}

LaurentPoly specialize_coefficients(const LaurentPoly& p, const IntMatrix& Btilde_target, const ContextPtr& target) {
  const int n = Btilde_target.cols();
  const int m = Btilde_target.rows() - n;
  if (p.context()->n() != n || p.context()->m() != n || target->n() != n || target->m() != m)
    throw Error(ErrorKind::ContextMismatch, "coefficient specialization contexts");
  std::vector<LaurentPoly> img;
  for (int i = 0; i < n; ++i) img.push_back(LaurentPoly::variable(target, i));
  for (int j = 0; j < n; ++j) {
    std::vector<long long> e(n + m, 0);
    for (int i = 0; i < m; ++i) e[n + i] = Btilde_target(n + i, j);
    img.push_back(LaurentPoly::monomial(target, e));
  }
  return substitute(p, img, target);
}

}  // namespace cluster
