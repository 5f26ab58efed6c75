#include "doctest.h"

#include <algorithm>
#include <functional>
#include <iterator>
#include <set>

#include "cluster/errors.hpp"
#include "cluster/gca.hpp"

using namespace cluster;

namespace {

const IntMatrix kA2{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}};
const IntMatrix kA3{{0, 1, 0, 1}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, -1, 0}};
const IntMatrix kC2{{0, 1, 0}, {-2, 0, 2}, {0, -1, 0}};
const IntMatrix kA4{{0, 1, 0, 0, 1}, {-1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, -1, 0, 1}, {-1, 0, 0, -1, 0}};
const IntMatrix kA22{{0, 1, 0, 1}, {-1, 0, -1, 0}, {0, 1, 0, 1}, {-1, 0, -1, 0}};

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

// All maximal pairwise-compatible arc sets of one tube, as sorted vectors.
std::set<std::vector<TubeRoot>> brute_force_clusters(int k, int tube) {
  std::vector<TubeRoot> arcs;
  for (int s = 0; s < k; ++s)
    for (int l = 1; l < k; ++l) arcs.push_back({tube, s, l});
  std::set<std::vector<TubeRoot>> out;
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
    if (!extendable) {
      auto s = cur;
      std::sort(s.begin(), s.end());
      out.insert(s);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("tropical monomials") {
  TropMonomial a{{1, -2, 0}}, b{{0, 3, -1}};
  CHECK(trop_add(a, b) == TropMonomial{{0, -2, -1}});
  CHECK(a * b == TropMonomial{{1, 1, -1}});
  CHECK(a / b == TropMonomial{{1, -5, 1}});
  CHECK(a.pow(3) == TropMonomial{{3, -6, 0}});
  CHECK(TropMonomial::one(3).is_one());
  CHECK(!a.is_one());
  CHECK(trop_add(a, TropMonomial::one(3)) == TropMonomial{{0, -2, 0}});
  CHECK(TropMonomial::var(3, 1).to_string({"a", "b", "c"}) == "b");
}

TEST_CASE("exchange graphs of single tubes match brute force") {
  for (const auto& B : {kA2, kA3, kC2, kA4, kA22}) {
    ThetaEngine engine(B);
    const auto& tubes = engine.tubes();
    for (int o = 0; o < static_cast<int>(tubes.size()); ++o) {
      int k = tubes[o].size();
      if (k < 2) continue;
      GCASeed s0 = build_tube_seed(tubes, o, standard_maximal_set(o, k));
      CHECK(is_normalized(s0));
      for (int g = 0; g < s0.size(); ++g) CHECK(s0.d[g] == (s0.J[g].length == k - 1 ? 2 : 1));
      ExchangeGraph G = enumerate_exchange_graph(s0);
      CHECK(G.ok());
      CHECK(G.regular);
      auto expected = brute_force_clusters(k, o);
      std::set<std::vector<TubeRoot>> got;
      for (const auto& v : G.vertices) {
        auto J = v.J;
        std::sort(J.begin(), J.end());
        got.insert(J);
      }
      CHECK(got == expected);
      CHECK(G.vertices.size() == expected.size());
      CHECK(G.edges.size() == expected.size() * (k - 1) / 2);
      CHECK(G.variables.size() == static_cast<size_t>(k * (k - 1)));
      for (auto [a, b] : G.edges) {
        std::set<TubeRoot> Ja(G.vertices[a].J.begin(), G.vertices[a].J.end());
        std::set<TubeRoot> Jb(G.vertices[b].J.begin(), G.vertices[b].J.end());
        std::vector<TubeRoot> only_a, only_b;
        std::set_difference(Ja.begin(), Ja.end(), Jb.begin(), Jb.end(), std::back_inserter(only_a));
        std::set_difference(Jb.begin(), Jb.end(), Ja.begin(), Ja.end(), std::back_inserter(only_b));
        REQUIRE(only_a.size() == 1);
        REQUIRE(only_b.size() == 1);
        CHECK(!arcs_compatible(k, only_a[0], only_b[0]));
      }
    }
  }
}

TEST_CASE("seed sizes") {
  CHECK(ThetaEngine(kA2).tubes().size() == 1);
  CHECK(ThetaEngine(kA3).tubes().at(0).size() == 3);
  CHECK(ThetaEngine(kA4).tubes().at(0).size() == 4);
  auto G = enumerate_exchange_graph(build_tube_seed(ThetaEngine(kA4).tubes(), 0, standard_maximal_set(0, 4)));
  CHECK(G.vertices.size() == 20);
  CHECK(G.edges.size() == 30);
}

TEST_CASE("mutation is an involution with the ratio identity") {
  ThetaEngine engine(kA4);
  GCASeed s0 = build_tube_seed(engine.tubes(), 0, standard_maximal_set(0, 4));
  for (int g = 0; g < s0.size(); ++g) {
    GCASeed t = gca_mutate(s0, g);
    CHECK(ratio_identity_holds(s0, t, g));
    CHECK(is_normalized(t));
    GCASeed back = gca_mutate(t, g);
    CHECK(same_seed_data(back, s0));
    CHECK(back.x == s0.x);
    CHECK(t.x[g] * s0.x[g] == exchange_rhs(s0, g));
  }
  CHECK_THROWS_AS(gca_mutate(s0, 7), Error);
}

TEST_CASE("t_o sends the exchange graph to theta functions") {
  for (const auto& B : {kA2, kA3, kC2, kA4, kA22}) {
    ThetaEngine engine(B);
    for (int o = 0; o < static_cast<int>(engine.tubes().size()); ++o) {
      int k = engine.tubes()[o].size();
      GCASeed s0 = build_tube_seed(engine.tubes(), o, standard_maximal_set(o, k));
      ExchangeGraph G = enumerate_exchange_graph(s0);
      for (bool free : {false, true}) {
        TOCheckReport rep = t_o_check(engine, G, free);
        CHECK_MESSAGE(rep.ok(), (rep.failures.empty() ? "" : rep.failures.front()));
        CHECK(rep.relations_checked == static_cast<int>(G.vertices.size()) * (k - 1));
        CHECK(rep.variables_checked == k * (k - 1));
      }
    }
  }
}

TEST_CASE("product seed over several tubes") {
  ThetaEngine engine(kA22);
  REQUIRE(engine.tubes().size() == 2);
  FramePtr frame = make_frame(engine.tubes(), {0, 1});
  std::vector<TubeRoot> J = standard_maximal_set(0, 2);
  auto J1 = standard_maximal_set(1, 2);
  J.insert(J.end(), J1.begin(), J1.end());
  GCASeed s0 = build_tube_seed(frame, J);
  CHECK(s0.B == IntMatrix(2, 2));
  ExchangeGraph G = enumerate_exchange_graph(s0);
  CHECK(G.ok());
  CHECK(G.vertices.size() == 4);
  CHECK(G.edges.size() == 4);
  TOCheckReport rep = t_o_check(engine, G);
  CHECK(rep.ok());
}

TEST_CASE("invalid seeds and budgets") {
  ThetaEngine engine(kA4);
  const auto& tubes = engine.tubes();
  try {
    build_tube_seed(tubes, 0, {TubeRoot{0, 0, 1}, TubeRoot{0, 1, 1}, TubeRoot{0, 2, 1}});
    FAIL("expected NotMaximal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMaximal);
  }
  try {
    enumerate_exchange_graph(build_tube_seed(tubes, 0, standard_maximal_set(0, 4)), 3);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}
