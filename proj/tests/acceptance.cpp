#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cluster/errors.hpp"
#include "cluster/gca.hpp"
#include "cluster/json_io.hpp"
#include "cluster/scatter2.hpp"
#include "cluster/theta.hpp"
#include "cluster/verify.hpp"

using namespace cluster;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

MatrixSpec fixture(const std::string& name) {
  return read_matrix_file(std::string(CLUSTER_DATA_DIR) + "/" + name + ".json");
}

const std::vector<std::string> kAllFixtures{"A1tilde", "rank2_b4", "rank2_c4", "A2tilde",
                                            "A3tilde", "C2tilde",  "A4tilde",  "A22tilde"};
const std::vector<std::string> kRank2{"A1tilde", "rank2_b4", "rank2_c4"};

IntMatrix swap_matrix(const IntMatrix& B) { return IntMatrix{{0, B(1, 0)}, {B(0, 1), 0}}; }

LaurentPoly swap_indices(const LaurentPoly& p) {
  LaurentPoly out(p.context());
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    std::swap(f[0], f[1]);
    std::swap(f[2], f[3]);
    out.add_term(f, c);
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  auto ctx = make_context(2, 2);
  LaurentPoly x1 = LaurentPoly::variable(ctx, 0), x2 = LaurentPoly::variable(ctx, 1);
  LaurentPoly y1 = LaurentPoly::variable(ctx, 2), y2 = LaurentPoly::variable(ctx, 3);
  auto inv = [&](const LaurentPoly& m) { return m.monomial_inverse(); };
  // numerators over monomial denominators, as displayed
  std::vector<std::pair<IntMatrix, LaurentPoly>> cases{
      {IntMatrix{{0, 2}, {-2, 0}}, (x2.pow(2) + y1 + y1 * y2 * x1.pow(2)) * inv(x1 * x2)},
      {IntMatrix{{0, 4}, {-1, 0}},
       (x2.pow(2) + x2 * y1.scaled(2) + y1.pow(2) + x1.pow(4) * y1.pow(2) * y2) * inv(x1.pow(2) * x2)},
      {IntMatrix{{0, 1}, {-4, 0}},
       (x2.pow(4) + y1 + (y1 * y2 * x1).scaled(2) + y1 * y2.pow(2) * x1.pow(2)) * inv(x1 * x2.pow(2))},
  };
  for (const auto& [B, expected] : cases) {
    for (bool swapped : {false, true}) {
      IntMatrix M = swapped ? swap_matrix(B) : B;
      LaurentPoly want = swapped ? swap_indices(expected) : expected;
      ThetaEngine e(M);
      LaurentPoly got = e.theta_delta().poly;
      o.expect(got == want, M.to_string() + ": " + got.to_string() + " != " + want.to_string());
      o.expect(rank2_theta_delta(M, ctx) == want, M.to_string() + ": closed form differs");
    }
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const int order = 8;
  for (const auto& name : kRank2) {
    IntMatrix B0 = fixture(name).B();
    for (const IntMatrix& B : {B0, swap_matrix(B0)}) {
      ScatteringDiagram2 d = complete_scattering_rank2(B, order);
      o.expect(d.consistent, B.to_string() + ": diagram not consistent");
      ThetaEngine e(B);
      ThetaFunction td = e.theta_delta();
      o.expect(theta_via_broken_lines(d, td.label, order) == truncate_y(td.poly, order),
               B.to_string() + ": theta_delta differs from broken lines");
      for (int k = 1; k <= 4; ++k) {
        ThetaFunction t = e.theta_k_delta(k);
        LaurentPoly bl = theta_via_broken_lines(d, t.label, order);
        o.expect(bl == truncate_y(t.poly, order), B.to_string() + ": k=" + std::to_string(k) + " broken lines " +
                                                      bl.to_string());
      }
    }
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const int order = 8;
  auto check_products = [&](ThetaEngine& e, const std::string& tag) {
    LaurentPoly one = e.one();
    auto theta = [&](int k) { return k == 0 ? one : e.theta_k_delta(k).poly; };
    for (int k = 1; k <= 4; ++k) {
      LaurentPoly sq = theta(k) * theta(k);
      o.expect(sq == theta(2 * k) + e.y_monomial(k * e.data().delta).scaled(2),
               tag + ": square of theta_" + std::to_string(k) + "delta");
      for (int l = 1; l < k; ++l)
        o.expect(theta(k) * theta(l) == theta(k + l) + e.y_monomial(l * e.data().delta) * theta(k - l),
                 tag + ": product " + std::to_string(k) + "," + std::to_string(l));
    }
  };
  for (const auto& name : kRank2) {
    IntMatrix B = fixture(name).B();
    ThetaEngine e(B);
    check_products(e, name);
    // the same identities read off the scattering diagram as structure constants
    ScatteringDiagram2 d = complete_scattering_rank2(B, order);
    WeightVec nu = nu_c(e.data(), e.data().delta);
    long long hd = height(e.data().delta);
    for (int k = 1; k <= 4; ++k)
      for (int l = 1; l <= k; ++l) {
        WeightVec sum = (k + l) * nu, diff = (k - l) * nu;
        LaurentPoly top = structure_constant_rank2(d, k * nu, l * nu, sum, endpoint_near(d, sum), order);
        o.expect(top == LaurentPoly::constant(rank2_context(), 1), name + ": leading structure constant");
        LaurentPoly low = structure_constant_rank2(d, k * nu, l * nu, diff, endpoint_near(d, diff), order);
        LaurentPoly want = l * hd <= order ? e.y_monomial(l * e.data().delta).scaled(k == l ? 2 : 1)
                                           : LaurentPoly(rank2_context());
        o.expect(low == want, name + ": lower structure constant for " + std::to_string(k) + "," + std::to_string(l) +
                                  " is " + low.to_string());
      }
  }
  ThetaEngine a2(fixture("A2tilde").B());
  check_products(a2, "A2tilde");
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const std::string name : {"A2tilde", "A3tilde"}) {
    ThetaEngine e(fixture(name).B());
    LaurentPoly ref = e.theta_delta().poly;
    int count = 0;
    for (int t = 0; t < static_cast<int>(e.tubes().size()); ++t)
      for (int i = 0; i < e.tubes()[t].size(); ++i, ++count)
        o.expect(e.theta_delta_from(t, i).poly == ref, name + ": choice of tube " + std::to_string(t) + " index " +
                                                           std::to_string(i) + " changes theta_delta");
    o.expect(count >= 2, name + ": fewer than two choices of beta");
    o.expect(pointed_form(ref, e.principal_matrix()).g == nu_c(e.data(), e.data().delta).c,
             name + ": pointed form is not nu_c(delta)");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const std::string name : {"A2tilde", "A3tilde", "C2tilde"}) {
    ThetaEngine e(fixture(name).B());
    int checked = 0;
    for (int t = 0; t < static_cast<int>(e.tubes().size()); ++t) {
      int k = e.tubes()[t].size();
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          if (i == j) continue;
          ImaginaryExchangeRecord r = e.imaginary_exchange(t, i, j);
          o.expect(r.lhs == r.term_delta + r.term_phi + r.term_phi_prime,
                   name + ": imaginary exchange " + std::to_string(i) + "," + std::to_string(j));
          ++checked;
        }
      for (const auto& J : all_maximal_compatible_sets(k, t))
        for (const auto& g : J) {
          if (g.length == k - 1) continue;
          RealExchangeRecord r = e.real_exchange(t, J, g);
          o.expect(r.lhs == r.term_plain + r.term_coeff, name + ": real exchange of " + g.to_string());
          ++checked;
        }
    }
    o.expect(checked > 0, name + ": no exchangeable pairs");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const std::string name : {"A2tilde", "A3tilde"}) {
    ThetaEngine e(fixture(name).B());
    auto roots = imaginary_wall_roots(e, 2, 2);
    o.expect(!roots.empty(), name + ": no roots");
    for (const auto& phi : roots) {
      RootVec d = denominator_vector_of(e.theta_imaginary(phi).poly);
      o.expect(d == phi, name + ": denominator of theta at " + phi.to_string() + " is " + d.to_string());
    }
  }
  return o;
}

Outcome run_checks(const std::vector<std::string>& names, const std::vector<std::string>& identities,
                   const VerifyOptions& opt) {
  Outcome o;
  for (const auto& name : names) {
    ThetaEngine e(fixture(name).B(), opt.bfs_depth, opt.height_bound);
    for (const auto& id : identities) {
      CheckResult r = run_identity(e, id, opt);
      o.expect(r.ok(), name + " " + id + ": " + (r.failures.empty() ? "" : r.failures.front()));
      bool vacuous = id == "broken-lines" || (id == "tube-closure" && e.tubes().empty());
      o.expect(r.checked > 0 || vacuous, name + " " + id + ": nothing checked");
    }
  }
  return o;
}

Outcome criterion7() { return run_checks(kAllFixtures, {"expansion", "tube-closure"}, VerifyOptions{}); }

bool arcs_compatible(int k, const TubeRoot& a, const TubeRoot& b) {
  std::set<int> sa, sb;
  for (int i = 0; i < a.length; ++i) sa.insert((a.start + i) % k);
  for (int i = 0; i < b.length; ++i) sb.insert((b.start + i) % k);
  if (std::includes(sa.begin(), sa.end(), sb.begin(), sb.end())) return true;
  if (std::includes(sb.begin(), sb.end(), sa.begin(), sa.end())) return true;
  for (int x : sa)
    for (int y : sb)
      if (x == y || (x + 1) % k == y || (y + 1) % k == x) return false;
  return true;
}

size_t brute_force_cluster_count(int k) {
  std::vector<TubeRoot> arcs;
  for (int s = 0; s < k; ++s)
    for (int l = 1; l < k; ++l) arcs.push_back({0, s, l});
  size_t count = 0;
  std::vector<TubeRoot> cur;
  std::function<void(size_t)> rec = [&](size_t from) {
    bool extendable = false;
    for (size_t i = 0; i < arcs.size(); ++i) {
      bool ok = std::find(cur.begin(), cur.end(), arcs[i]) == cur.end();
      for (const auto& c : cur) ok = ok && arcs_compatible(k, c, arcs[i]);
      if (!ok) continue;
      extendable = true;
      if (i >= from) {
        cur.push_back(arcs[i]);
        rec(i + 1);
        cur.pop_back();
      }
    }
    if (!extendable) ++count;
  };
  rec(0);
  return count;
}

Outcome criterion8() {
  Outcome o;
  std::set<int> sizes;
  for (const std::string name : {"A2tilde", "A3tilde", "C2tilde", "A4tilde", "A22tilde"}) {
    ThetaEngine e(fixture(name).B());
    for (int t = 0; t < static_cast<int>(e.tubes().size()); ++t) {
      int k = e.tubes()[t].size();
      sizes.insert(k);
      ExchangeGraph g = enumerate_exchange_graph(build_tube_seed(e.tubes(), t, standard_maximal_set(t, k)));
      std::string tag = name + " tube " + std::to_string(t);
      o.expect(g.vertices.size() == brute_force_cluster_count(k),
               tag + ": " + std::to_string(g.vertices.size()) + " seeds");
      o.expect(g.ok(), tag + ": " + (g.failures.empty() ? "" : g.failures.front()));
      for (bool free : {false, true}) {
        TOCheckReport rep = t_o_check(e, g, free);
        o.expect(rep.ok(), tag + (free ? " z=1" : "") + ": " + (rep.failures.empty() ? "" : rep.failures.front()));
      }
    }
  }
  o.expect(sizes.count(2) && sizes.count(3) && sizes.count(4), "tube sizes 2, 3 and 4 not all covered");
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& name : kAllFixtures) {
    MatrixSpec ms = fixture(name);
    IntMatrix B = ms.B();
    IntMatrix Bt = principal_extension(B);
    for (int k = 0; k < B.cols(); ++k)
      o.expect(mutate_matrix(mutate_matrix(Bt, k), k) == Bt, name + ": mutation is not an involution");
    AffineData a = build_affine_data(B);
    o.expect(mutate_matrix_word(B, a.order) == B, name + ": source-to-sink word does not fix B");
  }
  VerifyOptions opt;
  opt.words = 500;
  opt.word_length = 10;
  opt.samples = 50;
  Outcome rest = run_checks(kAllFixtures, {"laurent", "orbits", "symmetry"}, opt);
  if (!rest.ok) o.fail(rest.detail);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "rank-2 theta_delta closed forms", 1.0, criterion1},
      {2, "broken lines agree with theta_delta and theta_k_delta", 60.0, criterion2},
      {3, "products of theta_k_delta", 0.0, criterion3},
      {4, "theta_delta independent of beta", 0.0, criterion4},
      {5, "imaginary and real exchange relations", 0.0, criterion5},
      {6, "denominator vectors in the imaginary wall", 0.0, criterion6},
      {7, "theta expansions of generator products", 0.0, criterion7},
      {8, "generalized cluster algebra exchange graphs", 120.0, criterion8},
      {9, "mutation symmetries and orbit dichotomy", 0.0, criterion9},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s)
      o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s");
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                o.ok ? "" : " - ", o.detail.c_str());
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
