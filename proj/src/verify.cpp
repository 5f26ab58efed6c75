#include "cluster/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/gca.hpp"
#include "cluster/log.hpp"
#include "cluster/scatter2.hpp"

namespace cluster {

namespace {

using Check = std::function<void(ThetaEngine&, const VerifyOptions&, CheckResult&)>;

void expect(CheckResult& r, bool ok, const std::string& what) {
  ++r.checked;
  if (!ok) r.failures.push_back(what);
}

void expect_equal(CheckResult& r, const LaurentPoly& lhs, const LaurentPoly& rhs, const std::string& what) {
  ++r.checked;
  if (lhs != rhs)
    r.failures.push_back(what + ": lhs " + lhs.to_string() + " rhs " + rhs.to_string() + " difference " +
                         (lhs - rhs).to_string());
}

void check_thetaxi(ThetaEngine& e, const VerifyOptions&, CheckResult& r) {
  const auto& a = e.data();
  WeightVec nd = nu_c(a, a.delta);
  ThetaFunction td = e.theta_delta();
  PointedForm pf = pointed_form(td.poly, e.principal_matrix());
  expect(r, WeightVec(pf.g) == nd, "theta_delta is pointed at " + WeightVec(pf.g).to_string() + ", expected " +
                                       nd.to_string());
  for (size_t t = 0; t < e.tubes().size(); ++t)
    for (int i = 0; i < e.tubes()[t].size(); ++i) {
      ThetaFunction ti = e.theta_delta_from(static_cast<int>(t), i);
      expect_equal(r, ti.poly, td.poly,
                   "theta_delta from tube " + std::to_string(t) + " element " + std::to_string(i));
    }
}

void check_cheby(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  const RootVec& delta = e.data().delta;
  for (int k = 1; k <= opt.kmax; ++k) {
    LaurentPoly tk = e.theta_k_delta(k).poly;
    expect_equal(r, tk * tk, e.theta_k_delta(2 * k).poly + e.y_monomial(k * delta).scaled(2),
                 "square of theta_" + std::to_string(k) + "delta");
    for (int l = 1; l < k; ++l) {
      LaurentPoly lhs = tk * e.theta_k_delta(l).poly;
      LaurentPoly rhs = e.theta_k_delta(k + l).poly + e.y_monomial(l * delta) * e.theta_k_delta(k - l).poly;
      expect_equal(r, lhs, rhs, "theta_" + std::to_string(k) + "delta * theta_" + std::to_string(l) + "delta");
    }
  }
}

void check_imexch(ThetaEngine& e, const VerifyOptions&, CheckResult& r) {
  for (size_t t = 0; t < e.tubes().size(); ++t) {
    int k = e.tubes()[t].size();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        ++r.checked;
        try {
          auto rec = e.imaginary_exchange(static_cast<int>(t), i, j);
          if (rec.product_vacuous)
            r.notes.push_back("tube " + std::to_string(t) + " pair " + std::to_string(i) + "," + std::to_string(j) +
                              ": phi and phi' are both zero");
        } catch (const Error& ex) {
          r.failures.push_back(ex.what());
        }
      }
  }
  if (e.tubes().empty()) r.notes.push_back("no tubes");
}

void check_realexch(ThetaEngine& e, const VerifyOptions&, CheckResult& r) {
  for (size_t t = 0; t < e.tubes().size(); ++t) {
    int k = e.tubes()[t].size();
    for (const auto& J : all_maximal_compatible_sets(k, static_cast<int>(t)))
      for (const auto& g : J) {
        if (g.length == k - 1) continue;
        ++r.checked;
        try {
          e.real_exchange(static_cast<int>(t), J, g);
        } catch (const Error& ex) {
          r.failures.push_back(ex.what());
        }
      }
  }
  if (e.tubes().empty()) r.notes.push_back("no tubes");
}

ThetaFunction generator_theta(ThetaEngine& e, const Generator& g) {
  return g.imaginary ? e.theta_k_delta(g.k) : e.theta_tube_root(g.root);
}

std::string generator_name(const Generator& g) {
  return g.imaginary ? std::to_string(g.k) + "delta" : g.root.to_string();
}

bool same_cone(ThetaEngine& e, const Generator& a, const Generator& b) {
  if (a.imaginary || b.imaginary) return true;
  return compatible(e.tubes(), a.root, b.root);
}

// True when the label is nu_c of a root built from one tube and multiples of delta.
bool label_in_tube_span(ThetaEngine& e, const WeightVec& label, int tube) {
  if (label.is_zero()) return true;
  RootVec phi;
  if (!nu_c_preimage(e.data(), label, phi)) return false;
  try {
    ClusterExpansion ex = cluster_expansion_imaginary(e.data(), e.tubes(), phi);
    for (const auto& [root, mult] : ex.arcs)
      if (root.tube != tube && mult > 0) return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

void check_products(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r, bool tube_only) {
  auto gens = product_generators(e);
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i; j < gens.size(); ++j) {
      const Generator& a = gens[i];
      const Generator& b = gens[j];
      int tube = -1;
      if (tube_only) {
        if (!a.imaginary && !b.imaginary && a.root.tube != b.root.tube) continue;
        if (a.imaginary && b.imaginary) continue;
        tube = a.imaginary ? b.root.tube : a.root.tube;
      }
      std::string what = generator_name(a) + " * " + generator_name(b);
      ThetaFunction ta = generator_theta(e, a), tb = generator_theta(e, b);
      ThetaCombo c;
      try {
        c = e.expand_product(ta, tb, opt.peel_budget);
      } catch (const Error& ex) {
        expect(r, false, what + ": " + ex.what());
        continue;
      }
      expect_equal(r, e.reconstruct(c), ta.poly * tb.poly, what + " reconstruction");
      for (const auto& kv : c.peel_order) {
        if (tube_only)
          expect(r, label_in_tube_span(e, kv, tube),
                 what + ": label " + kv.to_string() + " leaves the span of tube " + std::to_string(tube));
        else
          expect(r, kv.is_zero() || e.in_imaginary_wall(kv), what + ": label " + kv.to_string() + " outside d_inf");
      }
      if (!tube_only && same_cone(e, a, b))
        expect(r, c.on_dominance_chain, what + ": labels leave the dominance chain");
    }
}

void check_expansion(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) { check_products(e, opt, r, false); }

void check_tube_closure(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  check_products(e, opt, r, true);
  if (e.tubes().empty()) r.notes.push_back("no tubes");
}

void check_denominators(ThetaEngine& e, const VerifyOptions&, CheckResult& r) {
  for (const auto& phi : imaginary_wall_roots(e, 2, 2)) {
    if (phi.is_zero()) continue;
    ThetaFunction t = e.theta_imaginary(phi);
    RootVec d = denominator_vector_of(t.poly);
    expect(r, d == phi, "denominator vector of theta at nu_c" + phi.to_string() + " is " + d.to_string());
  }
}

std::vector<GCASeed> gca_initial_seeds(ThetaEngine& e) {
  std::vector<GCASeed> seeds;
  const auto& tubes = e.tubes();
  for (size_t t = 0; t < tubes.size(); ++t)
    seeds.push_back(build_tube_seed(tubes, static_cast<int>(t),
                                    standard_maximal_set(static_cast<int>(t), tubes[t].size())));
  if (tubes.size() > 1) {
    std::vector<int> all(tubes.size());
    std::iota(all.begin(), all.end(), 0);
    FramePtr f = make_frame(tubes, all);
    std::vector<TubeRoot> J;
    for (size_t t = 0; t < tubes.size(); ++t)
      for (const auto& g : standard_maximal_set(static_cast<int>(t), tubes[t].size())) J.push_back(g);
    seeds.push_back(build_tube_seed(f, J));
  }
  return seeds;
}

void check_jmut(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  for (const auto& s0 : gca_initial_seeds(e)) {
    ExchangeGraph g = enumerate_exchange_graph(s0, opt.graph_budget);
    r.checked += static_cast<int>(g.edges.size());
    for (const auto& f : g.failures) r.failures.push_back(f);
    expect(r, g.regular, "exchange graph is not regular");
    r.notes.push_back(std::to_string(s0.size()) + " positions: " + std::to_string(g.vertices.size()) +
                      " seeds, " + std::to_string(g.edges.size()) + " edges");
  }
  if (e.tubes().empty()) r.notes.push_back("no tubes");
}

void check_gca(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  for (const auto& s0 : gca_initial_seeds(e)) {
    ExchangeGraph g = enumerate_exchange_graph(s0, opt.graph_budget);
    for (const auto& f : g.failures) r.failures.push_back(f);
    for (bool cf : {false, true}) {
      TOCheckReport rep = t_o_check(e, g, cf);
      r.checked += rep.relations_checked + rep.variables_checked;
      for (const auto& f : rep.failures) r.failures.push_back(std::string(cf ? "[z=1] " : "") + f);
    }
  }
  if (e.tubes().empty()) r.notes.push_back("no tubes");
}

void check_symmetry(ThetaEngine& e, const VerifyOptions&, CheckResult& r) {
  const IntMatrix& B = e.data().B;
  IntMatrix Bt = principal_extension(B);
  for (int k = 0; k < B.cols(); ++k)
    expect(r, mutate_matrix(mutate_matrix(Bt, k), k) == Bt, "mutation at " + std::to_string(k + 1) + " is not an involution");
  std::vector<int> word(e.data().order.begin(), e.data().order.end());
  expect(r, mutate_matrix_word(B, word) == B, "source-to-sink word does not fix B");
}

void check_laurent(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  const IntMatrix& B = e.data().B;
  const int n = B.cols();
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> len(1, opt.word_length), dir(0, n - 1);
  Seed s0 = initial_seed(principal_extension(B));
  for (int w = 0; w < opt.words; ++w) {
    std::vector<int> word;
    int L = len(rng);
    for (int i = 0; i < L; ++i) word.push_back(dir(rng));
    std::string ws;
    for (int x : word) ws += std::to_string(x + 1);
    try {
      Seed s = mutate_seed_word(s0, word);
      bool ok = true;
      for (const auto& x : s.cluster)
        for (const auto& [ex, c] : x.terms())
          for (int i = n; i < 2 * n; ++i) ok = ok && ex[i] >= 0;
      expect(r, ok, "word " + ws + ": coefficient part is not polynomial");
    } catch (const Error& ex) {
      expect(r, false, "word " + ws + ": " + ex.what());
    }
  }
}

long long l1(const WeightVec& v) {
  long long s = 0;
  for (auto c : v.c) s += c < 0 ? -c : c;
  return s;
}

void check_orbits(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  const auto& a = e.data();
  const IntMatrix& B = a.B;
  std::vector<int> word(a.order.begin(), a.order.end());
  int L = 1;
  for (const auto& t : e.tubes()) L = std::lcm(L, t.size());
  auto eta_period = [&](WeightVec v) {
    for (int j = 0; j < L; ++j) v = mutation_map_eta(B, word, v);
    return v;
  };
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_int_distribution<int> coef(0, 2), coord(-3, 3);
  int on = opt.samples / 2, off = opt.samples - on;
  for (int s = 0; s < on; ++s) {
    RootVec phi = RootVec::zero(a.n);
    if (e.tubes().empty()) phi = static_cast<long long>(1 + coef(rng)) * a.delta;
    for (const auto& t : e.tubes())
      for (const auto& b : t.orbit) phi += static_cast<long long>(coef(rng)) * b;
    WeightVec v = nu_c(a, phi);
    WeightVec w = eta_period(v);
    expect(r, w == v, "point " + v.to_string() + " of d_inf moves to " + w.to_string());
    expect(r, mutation_map_eta(B, word, v) == coxeter_apply(a, v, -1),
           "eta and c^-1 disagree at " + v.to_string());
  }
  const int periods = 12, tail = 4;
  int drawn = 0;
  while (drawn < off) {
    WeightVec v(std::vector<long long>(a.n));
    for (auto& c : v.c) c = coord(rng);
    if (v.is_zero() || e.in_imaginary_wall(v)) continue;
    ++drawn;
    std::vector<long long> norms{l1(v)};
    WeightVec w = v;
    bool returned = false;
    for (int p = 0; p < periods; ++p) {
      w = eta_period(w);
      norms.push_back(l1(w));
      returned = returned || w == v;
    }
    bool growing = true;
    for (int p = periods - tail + 1; p <= periods; ++p) growing = growing && norms[p] > norms[p - 1];
    std::ostringstream os;
    for (auto x : norms) os << " " << x;
    expect(r, !returned && growing && norms.back() > norms.front(),
           "point " + v.to_string() + " off d_inf does not escape; norms" + os.str());
  }
}

void check_broken_lines(ThetaEngine& e, const VerifyOptions& opt, CheckResult& r) {
  if (e.n() != 2) {
    r.notes.push_back("rank-2 only");
    return;
  }
  ScatteringDiagram2 d = complete_scattering_rank2(e.data().B, opt.order);
  expect(r, d.consistent, "scattering diagram is not consistent to order " + std::to_string(opt.order));
  for (int k = 1; k <= opt.kmax; ++k) {
    ThetaFunction t = e.theta_k_delta(k);
    expect_equal(r, theta_via_broken_lines(d, t.label, opt.order), truncate_y(t.poly, opt.order),
                 "broken lines for " + std::to_string(k) + "delta");
  }
  WeightVec nu = e.theta_delta().label;
  const RootVec& delta = e.data().delta;
  for (int k = 1; k <= opt.kmax; ++k) {
    WeightVec l = static_cast<long long>(k) * nu;
    for (int a = 0; a <= k; ++a) {
      WeightVec target = static_cast<long long>(2 * (k - a)) * nu;
      LaurentPoly got = structure_constant_rank2(d, l, l, target, endpoint_near(d, target), opt.order);
      LaurentPoly want(rank2_context());
      if (a == 0) want = LaurentPoly::constant(rank2_context(), 1);
      if (a == k) want = LaurentPoly::monomial(rank2_context(), std::vector<long long>{0, 0, k * delta[0], k * delta[1]}, 2);
      expect_equal(r, got, truncate_y(want, opt.order),
                   "structure constant a(" + std::to_string(k) + "nu, " + std::to_string(k) + "nu, " +
                       std::to_string(2 * (k - a)) + "nu)");
    }
  }
}

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> r = {
      {"broken-lines", check_broken_lines},
      {"cheby", check_cheby},
      {"denominators", check_denominators},
      {"expansion", check_expansion},
      {"gca", check_gca},
      {"imexch", check_imexch},
      {"jmut", check_jmut},
      {"laurent", check_laurent},
      {"orbits", check_orbits},
      {"realexch", check_realexch},
      {"symmetry", check_symmetry},
      {"thetaxi", check_thetaxi},
      {"tube-closure", check_tube_closure},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

CheckResult run_identity(ThetaEngine& engine, const std::string& identity, const VerifyOptions& opt) {
  for (const auto& [name, fn] : registry())
    if (name == identity) {
      CheckResult r;
      r.identity = name;
      log_info("verifying " + name);
      try {
        fn(engine, opt, r);
      } catch (const Error& ex) {
        r.failures.push_back(ex.what());
      }
      return r;
    }
  throw Error(ErrorKind::InvalidArgument, "unknown identity " + identity);
}

CheckResult run_identity(const IntMatrix& B, const std::string& identity, const VerifyOptions& opt) {
  ThetaEngine engine(B, opt.bfs_depth, opt.height_bound);
  return run_identity(engine, identity, opt);
}

std::vector<Generator> product_generators(ThetaEngine& engine, long long max_coord) {
  std::vector<Generator> out;
  auto small = [max_coord](const RootVec& v) {
    for (auto c : v.c)
      if (c > max_coord) return false;
    return true;
  };
  const RootVec& delta = engine.data().delta;
  for (int k = 1; small(static_cast<long long>(k) * delta); ++k) {
    Generator g;
    g.imaginary = true;
    g.k = k;
    g.vector = static_cast<long long>(k) * delta;
    out.push_back(g);
  }
  for (size_t t = 0; t < engine.tubes().size(); ++t)
    for (const auto& root : all_arcs(engine.tubes(), static_cast<int>(t))) {
      RootVec v = tube_root_vector(engine.tubes()[t], root);
      if (!small(v)) continue;
      Generator g;
      g.root = root;
      g.vector = v;
      out.push_back(g);
    }
  return out;
}

std::vector<RootVec> imaginary_wall_roots(const ThetaEngine& engine, long long max_coeff, long long max_delta) {
  std::vector<RootVec> simples;
  for (const auto& t : engine.tubes())
    for (const auto& b : t.orbit) simples.push_back(b);
  const RootVec& delta = engine.data().delta;
  std::set<RootVec> out;
  std::vector<long long> c(simples.size(), 0);
  while (true) {
    RootVec base = RootVec::zero(engine.n());
    for (size_t i = 0; i < simples.size(); ++i) base += c[i] * simples[i];
    for (long long m = 0; m <= max_delta; ++m) out.insert(base + m * delta);
    size_t i = 0;
    while (i < c.size() && c[i] == max_coeff) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  return {out.begin(), out.end()};
}

Json tube_info_json(ThetaEngine& e) {
  const auto& a = e.data();
  Json j;
  j["matrix"] = a.B.to_rows();
  j["s"] = a.s;
  j["cartan"] = a.A.to_rows();
  std::vector<int> order1;
  for (int o : a.order) order1.push_back(o + 1);
  j["coxeter_order"] = order1;
  j["delta"] = a.delta.c;
  j["nu_delta"] = nu_c(a, a.delta).c;
  Json tubes = Json::array();
  for (size_t t = 0; t < e.tubes().size(); ++t) {
    const Tube& tube = e.tubes()[t];
    Json tj;
    tj["size"] = tube.size();
    Json orbit = Json::array(), nus = Json::array();
    for (const auto& b : tube.orbit) {
      orbit.push_back(b.c);
      nus.push_back(nu_c(a, b).c);
    }
    tj["simples"] = orbit;
    tj["nu_simples"] = nus;
    Json arcs = Json::array();
    for (const auto& r : all_arcs(e.tubes(), static_cast<int>(t))) {
      Json aj;
      aj["start"] = r.start;
      aj["length"] = r.length;
      RootVec v = tube_root_vector(tube, r);
      aj["root"] = v.c;
      aj["nu"] = nu_c(a, v).c;
      arcs.push_back(aj);
    }
    tj["arcs"] = arcs;
    tubes.push_back(tj);
  }
  j["tubes"] = tubes;
  return j;
}

Json build_report(ThetaEngine& e, const std::string& name, const VerifyOptions& opt) {
  Json j;
  j["name"] = name;
  Json info = tube_info_json(e);
  for (const auto& [k, v] : info.items()) j[k] = v;
  Json theta = Json::array();
  for (int k = 1; k <= std::min(opt.kmax, 2); ++k) {
    ThetaFunction t = e.theta_k_delta(k);
    Json tj;
    tj["target"] = std::to_string(k) + "*delta";
    tj["label"] = t.label.c;
    tj["poly"] = poly_to_json(t.poly);
    tj["text"] = t.poly.to_string();
    theta.push_back(tj);
  }
  j["theta"] = theta;
  Json gca = Json::array();
  for (const auto& s0 : gca_initial_seeds(e)) {
    ExchangeGraph g = enumerate_exchange_graph(s0, opt.graph_budget);
    Json gj;
    gj["tubes"] = s0.frame->tube_ids;
    gj["rank"] = s0.size();
    gj["vertices"] = g.vertices.size();
    gj["edges"] = g.edges.size();
    gj["variables"] = g.variables.size();
    gj["regular"] = g.regular;
    gj["failures"] = g.failures.size();
    gca.push_back(gj);
  }
  j["gca"] = gca;
  return j;
}

namespace {

std::string vec_text(const Json& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].get<long long>());
  return s + ")";
}

}  // namespace

std::string report_text(const Json& j) {
  std::ostringstream os;
  if (j.contains("name")) os << "matrix " << j["name"].get<std::string>() << "\n";
  os << "  B = " << j["matrix"].dump() << "\n";
  os << "  s = " << vec_text(j["s"]) << "\n";
  os << "  coxeter order = " << j["coxeter_order"].dump() << "\n";
  os << "  delta = " << vec_text(j["delta"]) << "\n";
  os << "  nu_c(delta) = " << vec_text(j["nu_delta"]) << "\n";
  os << "  tubes: " << j["tubes"].size() << "\n";
  for (size_t t = 0; t < j["tubes"].size(); ++t) {
    const Json& tj = j["tubes"][t];
    os << "  tube " << t << " size " << tj["size"].get<int>() << "\n";
    for (size_t i = 0; i < tj["simples"].size(); ++i)
      os << "    simple " << i << " " << vec_text(tj["simples"][i]) << " nu_c " << vec_text(tj["nu_simples"][i])
         << "\n";
    for (const auto& aj : tj["arcs"])
      os << "    arc start " << aj["start"].get<int>() << " length " << aj["length"].get<int>() << " root "
         << vec_text(aj["root"]) << " nu_c " << vec_text(aj["nu"]) << "\n";
  }
  if (j.contains("theta"))
    for (const auto& tj : j["theta"])
      os << "  theta " << tj["target"].get<std::string>() << " label " << vec_text(tj["label"]) << " = "
       << tj["text"].get<std::string>() << "\n";
  if (j.contains("gca"))
    for (const auto& gj : j["gca"])
      os << "  gca tubes " << gj["tubes"].dump() << " rank " << gj["rank"].get<int>() << ": "
       << gj["vertices"].get<size_t>() << " seeds, " << gj["edges"].get<size_t>() << " edges, "
       << gj["variables"].get<size_t>() << " variables, regular " << (gj["regular"].get<bool>() ? "yes" : "no")
       << "\n";
  return os.str();
}

}  // namespace cluster
