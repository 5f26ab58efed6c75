#include "cluster/gca.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "cluster/errors.hpp"
#include "cluster/log.hpp"
#include "cluster/seeds.hpp"

namespace cluster {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

std::vector<TubeRoot> restrict_to(const std::vector<TubeRoot>& J, int tube) {
  std::vector<TubeRoot> out;
  for (const auto& r : J)
    if (r.tube == tube) out.push_back(r);
  return out;
}

int position_of(const std::vector<TubeRoot>& J, const Arc& a) {
  for (size_t i = 0; i < J.size(); ++i)
    if (J[i].tube == a.tube && J[i].length == a.length && J[i].start == a.start)
      return static_cast<int>(i);
  return -1;
}

}  // namespace

bool TropMonomial::is_one() const {
  for (auto v : e)
    if (v) return false;
  return true;
}

TropMonomial TropMonomial::operator*(const TropMonomial& o) const {
  TropMonomial r = *this;
  for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e.at(i);
  return r;
}

TropMonomial TropMonomial::operator/(const TropMonomial& o) const {
  TropMonomial r = *this;
  for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e.at(i);
  return r;
}

TropMonomial TropMonomial::pow(long long k) const {
  TropMonomial r = *this;
  for (auto& v : r.e) v *= k;
  return r;
}

std::string TropMonomial::to_string(const std::vector<std::string>& names) const {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += names.at(i);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

TropMonomial trop_add(const TropMonomial& a, const TropMonomial& b) {
  TropMonomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::min(a.e[i], b.e.at(i));
  return r;
}

int GCAFrame::local(int tube) const {
  auto it = std::find(tube_ids.begin(), tube_ids.end(), tube);
  return it == tube_ids.end() ? -1 : static_cast<int>(it - tube_ids.begin());
}

int GCAFrame::z_index(int tube, int i) const {
  int l = local(tube);
  if (l < 0) throw Error(ErrorKind::IndexOutOfRange, "tube not in frame");
  return z_offset[l] + mod(i, tube_sizes[l]);
}

FramePtr make_frame(const std::vector<Tube>& tubes, const std::vector<int>& which) {
  auto f = std::make_shared<GCAFrame>();
  std::vector<std::string> names;
  for (int o : which) {
    int k = tubes.at(o).size();
    f->tube_ids.push_back(o);
    f->tube_sizes.push_back(k);
    f->z_offset.push_back(f->ntrop);
    f->rank += k - 1;
    for (int i = 0; i < k; ++i) f->trop_names.push_back("z" + std::to_string(o) + "_" + std::to_string(i));
    f->ntrop += k;
  }
  f->star = f->ntrop++;
  f->trop_names.push_back("zs");
  for (int i = 1; i <= f->rank; ++i) names.push_back("x" + std::to_string(i));
  for (const auto& t : f->trop_names) names.push_back(t);
  f->ctx = VarContext::make(f->rank, f->ntrop, names);
  return f;
}

std::vector<TubeRoot> standard_maximal_set(int tube, int k) {
  std::vector<TubeRoot> J;
  for (int j = 1; j < k; ++j) J.push_back(TubeRoot{tube, 1, j});
  return J;
}

GCASeed build_tube_seed(const FramePtr& frame, const std::vector<TubeRoot>& J) {
  const int r = static_cast<int>(J.size());
  if (r != frame->rank) throw Error(ErrorKind::NotMaximal, "index set has the wrong size for the frame");
  GCASeed s;
  s.frame = frame;
  s.J = J;
  for (auto& g : s.J) {
    int l = frame->local(g.tube);
    if (l < 0) throw Error(ErrorKind::NotMember, g.to_string() + " is outside the frame");
    g.start = mod(g.start, frame->tube_sizes[l]);
  }
  for (size_t l = 0; l < frame->tube_ids.size(); ++l)
    if (!is_maximal_compatible(frame->tube_sizes[l], restrict_to(s.J, frame->tube_ids[l])))
      throw Error(ErrorKind::NotMaximal, "index set is not maximal compatible in tube " + std::to_string(frame->tube_ids[l]));
  s.B = IntMatrix(r, r);
  s.d.assign(r, 1);
  s.p.resize(r);
  for (int i = 0; i < r; ++i) s.x.push_back(LaurentPoly::variable(frame->ctx, i));
  const TropMonomial unit = TropMonomial::one(frame->ntrop);
  for (int g = 0; g < r; ++g) {
    const TubeRoot& gamma = s.J[g];
    const int o = gamma.tube;
    const int k = frame->tube_sizes[frame->local(o)];
    LocalExchange le = local_exchange(k, restrict_to(s.J, o), gamma);
    auto z_of = [&](const Arc& a, int extra) {
      TropMonomial t = unit;
      for (int i = 0; i < a.length; ++i) t.e[frame->z_index(o, a.start + i)] += 1;
      t.e[frame->z_index(o, extra)] += 1;
      return t;
    };
    auto set_entry = [&](const Arc& a, long long v) {
      if (a.is_zero()) return;
      int pos = position_of(s.J, a);
      if (pos < 0) throw Error(ErrorKind::NotMaximal, "arc missing from the index set");
      s.B(pos, g) = v;
    };
    if (le.maximal) {
      s.d[g] = 2;
      set_entry(le.phi, 2);
      set_entry(le.phi1, -2);
      s.p[g] = {z_of(le.phi1, le.beta), TropMonomial::var(frame->ntrop, frame->star), z_of(le.phi, le.beta_prime)};
    } else {
      long long sg = le.gamma_on_first_side ? 1 : -1;
      set_entry(le.phi1, sg);
      set_entry(le.phi3, sg);
      set_entry(le.phi, -sg);
      set_entry(le.phi2, -sg);
      TropMonomial c = z_of(le.phi2, le.beta_prime);
      s.p[g] = sg > 0 ? std::vector<TropMonomial>{c, unit} : std::vector<TropMonomial>{unit, c};
    }
  }
  return s;
}

GCASeed build_tube_seed(const std::vector<Tube>& tubes, int tube, const std::vector<TubeRoot>& J) {
  return build_tube_seed(make_frame(tubes, {tube}), J);
}

LaurentPoly trop_to_poly(const FramePtr& frame, const TropMonomial& t) {
  std::vector<long long> e(frame->rank + frame->ntrop, 0);
  for (int i = 0; i < frame->ntrop; ++i) e[frame->rank + i] = t.e[i];
  return LaurentPoly::monomial(frame->ctx, e);
}

LaurentPoly exchange_rhs(const GCASeed& s, int g) {
  const int r = s.size();
  const int dg = s.d.at(g);
  LaurentPoly sum(s.frame->ctx);
  for (int l = 0; l <= dg; ++l) {
    std::vector<long long> e(r + s.frame->ntrop, 0);
    for (int i = 0; i < r; ++i) {
      long long b = s.B(i, g);
      if (b % dg != 0) throw Error(ErrorKind::InvalidArgument, "column not divisible by d");
      e[i] = std::max<long long>(b, 0) - l * (b / dg);
    }
    sum += LaurentPoly::monomial(s.frame->ctx, e) * trop_to_poly(s.frame, s.p[g][l]);
  }
  return sum;
}

GCASeed gca_mutate(const GCASeed& s, int g) {
  const int r = s.size();
  if (g < 0 || g >= r) throw Error(ErrorKind::IndexOutOfRange, "mutation position " + std::to_string(g + 1));
  GCASeed t = s;
  std::vector<LaurentPoly> images = s.x;
  for (int i = 0; i < s.frame->ntrop; ++i) images.push_back(LaurentPoly::variable(s.frame->ctx, r + i));
  t.x[g] = exact_div(substitute(exchange_rhs(s, g), images, s.frame->ctx), s.x[g]);

  const int dk = s.d[g];
  const auto& pk = s.p[g];
  for (int j = 0; j < r; ++j) {
    if (j == g) {
      for (int l = 0; l <= dk; ++l) t.p[g][l] = pk[dk - l];
      continue;
    }
    const int dj = s.d[j];
    const long long b = s.B(g, j);
    const long long bp = std::max<long long>(b, 0), bn = std::max<long long>(-b, 0);
    if (bp % dj != 0 || bn % dj != 0) throw Error(ErrorKind::InvalidArgument, "row entry not divisible by d_j");
    TropMonomial den = trop_add(s.p[j][0] * pk[0].pow(bp), s.p[j][dj] * pk[dk].pow(bn));
    for (int l = 0; l <= dj; ++l)
      t.p[j][l] = s.p[j][l] * pk[0].pow((dj - l) * bp / dj) * pk[dk].pow(l * bn / dj) / den;
  }
  t.B = mutate_matrix(s.B, g);
  const TubeRoot& gamma = s.J[g];
  int k = s.frame->tube_sizes[s.frame->local(gamma.tube)];
  t.J[g] = exchange_partner(k, restrict_to(s.J, gamma.tube), gamma);
  return t;
}

bool is_normalized(const GCASeed& s) {
  for (int g = 0; g < s.size(); ++g)
    if (!trop_add(s.p[g][0], s.p[g][s.d[g]]).is_one()) return false;
  return true;
}

bool ratio_identity_holds(const GCASeed& before, const GCASeed& after, int g) {
  const int dk = before.d[g];
  for (int j = 0; j < before.size(); ++j) {
    if (j == g) continue;
    const int dj = before.d[j];
    const long long b = before.B(g, j);
    const long long bp = std::max<long long>(b, 0), bn = std::max<long long>(-b, 0);
    for (int l = 0; l <= dj; ++l) {
      TropMonomial lhs = after.p[j][l] / after.p[j][0];
      TropMonomial rhs = before.p[j][l] * before.p[g][dk].pow(l * bn / dj) / (before.p[j][0] * before.p[g][0].pow(l * bp / dj));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

std::string gca_seed_key(const GCASeed& s) {
  const int r = s.size();
  std::vector<std::string> xs;
  for (const auto& v : s.x) xs.push_back(v.to_string());
  std::vector<int> ord(r);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](int a, int b) { return xs[a] < xs[b]; });
  std::string key;
  for (int a : ord) key += xs[a] + "|";
  key += "#";
  for (int a : ord)
    for (int b : ord) key += std::to_string(s.B(a, b)) + ",";
  key += "#";
  for (int a : ord) {
    key += std::to_string(s.d[a]) + ":";
    for (const auto& t : s.p[a]) key += t.to_string(s.frame->trop_names) + ";";
  }
  return key;
}

bool same_seed_data(const GCASeed& a, const GCASeed& b) {
  return a.B == b.B && a.p == b.p && a.d == b.d && a.J == b.J;
}

ExchangeGraph enumerate_exchange_graph(const GCASeed& s0, size_t budget) {
  ExchangeGraph G;
  std::map<std::string, int> index;
  std::set<std::pair<int, int>> edges;
  G.vertices.push_back(s0);
  index.emplace(gca_seed_key(s0), 0);
  for (int i = 0; i < s0.size(); ++i) G.variables.emplace(s0.J[i], s0.x[i]);
  std::queue<int> q;
  q.push(0);
  auto fail = [&](const std::string& m) {
    if (G.failures.size() < 50) G.failures.push_back(m);
  };
  if (!is_normalized(s0)) fail("initial seed is not normalized");
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    const GCASeed s = G.vertices[v];
    for (int g = 0; g < s.size(); ++g) {
      GCASeed t = gca_mutate(s, g);
      const std::string where = "mutation at " + s.J[g].to_string() + " from vertex " + std::to_string(v);
      if (!is_normalized(t)) fail(where + ": normalization lost");
      if (!ratio_identity_holds(s, t, g)) fail(where + ": ratio identity fails");
      GCASeed expect = build_tube_seed(s.frame, t.J);
      if (!same_seed_data(expect, t)) fail(where + ": mutated seed differs from the seed of the exchanged set");
      GCASeed back = gca_mutate(t, g);
      if (!same_seed_data(back, s) || back.x != s.x) fail(where + ": mutation is not an involution");
      auto [it, fresh] = G.variables.try_emplace(t.J[g], t.x[g]);
      if (!fresh && it->second != t.x[g]) fail(where + ": label " + t.J[g].to_string() + " carries two variables");
      std::string key = gca_seed_key(t);
      auto found = index.find(key);
      int w;
      if (found == index.end()) {
        if (G.vertices.size() >= budget)
          throw Error(ErrorKind::BudgetExceeded, "exchange graph exceeds " + std::to_string(budget) + " seeds");
        w = static_cast<int>(G.vertices.size());
        index.emplace(key, w);
        G.vertices.push_back(std::move(t));
        q.push(w);
      } else {
        w = found->second;
      }
      if (w == v) fail(where + ": loop edge");
      edges.insert({std::min(v, w), std::max(v, w)});
    }
  }
  G.edges.assign(edges.begin(), edges.end());
  std::vector<int> deg(G.vertices.size(), 0);
  for (auto [a, b] : G.edges) ++deg[a], ++deg[b];
  for (int dv : deg) G.regular = G.regular && dv == s0.size();
  if (!G.regular) fail("exchange graph is not regular");
  log_info("exchange graph: " + std::to_string(G.vertices.size()) + " seeds, " + std::to_string(G.edges.size()) + " edges");
  return G;
}

TOCheckReport t_o_check(ThetaEngine& engine, const ExchangeGraph& G, bool coefficient_free) {
  TOCheckReport rep;
  if (G.vertices.empty()) return rep;
  const FramePtr& frame = G.vertices[0].frame;
  const int n = engine.n();
  ContextPtr target = coefficient_free ? VarContext::make(n, 0) : engine.context();
  IntMatrix Bsq = engine.data().B;
  auto spec = [&](const LaurentPoly& p) { return coefficient_free ? specialize_coefficients(p, Bsq, target) : p; };
  std::map<TubeRoot, LaurentPoly> theta_cache;
  auto theta = [&](const TubeRoot& r) -> const LaurentPoly& {
    auto it = theta_cache.find(r);
    if (it == theta_cache.end()) it = theta_cache.emplace(r, spec(engine.theta_tube_root(r).poly)).first;
    return it->second;
  };
  LaurentPoly tdelta = spec(engine.theta_delta().poly);
  std::vector<LaurentPoly> zimg;
  for (size_t l = 0; l < frame->tube_ids.size(); ++l) {
    const Tube& t = engine.tubes().at(frame->tube_ids[l]);
    for (int i = 0; i < t.size(); ++i)
      zimg.push_back(coefficient_free ? LaurentPoly::constant(target, 1) : engine.y_monomial(t.orbit[i]));
  }
  zimg.push_back(tdelta);
  auto images_for = [&](const GCASeed& s) {
    std::vector<LaurentPoly> img;
    for (const auto& r : s.J) img.push_back(theta(r));
    img.insert(img.end(), zimg.begin(), zimg.end());
    return img;
  };
  for (size_t v = 0; v < G.vertices.size(); ++v) {
    const GCASeed& s = G.vertices[v];
    auto img = images_for(s);
    for (int g = 0; g < s.size(); ++g) {
      const TubeRoot& gamma = s.J[g];
      int k = frame->tube_sizes[frame->local(gamma.tube)];
      TubeRoot partner = exchange_partner(k, restrict_to(s.J, gamma.tube), gamma);
      LaurentPoly lhs = theta(gamma) * theta(partner);
      LaurentPoly rhs = substitute(exchange_rhs(s, g), img, target);
      ++rep.relations_checked;
      if (lhs != rhs)
        rep.failures.push_back("relation " + gamma.to_string() + " x " + partner.to_string() + " at vertex " +
                               std::to_string(v) + ": " + lhs.to_string() + " != " + rhs.to_string());
    }
  }
  auto img0 = images_for(G.vertices[0]);
  for (const auto& [label, var] : G.variables) {
    ++rep.variables_checked;
    try {
      LaurentPoly got = substitute_divide(var, img0, target);
      if (got != theta(label)) rep.failures.push_back("variable " + label.to_string() + " does not map to its theta function");
    } catch (const Error& e) {
      rep.failures.push_back("variable " + label.to_string() + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace cluster
