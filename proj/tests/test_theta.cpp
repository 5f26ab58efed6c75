#include "doctest.h"

#include "cluster/errors.hpp"
#include "cluster/scatter2.hpp"
#include "cluster/theta.hpp"

using namespace cluster;

namespace {

const IntMatrix kA1{{0, 2}, {-2, 0}};
const IntMatrix kA2{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}};
const IntMatrix kA3{{0, 1, 0, 1}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, -1, 0}};
const IntMatrix kC2{{0, 1, 0}, {-2, 0, 2}, {0, -1, 0}};
const IntMatrix kA4{{0, 1, 0, 0, 1}, {-1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, -1, 0, 1}, {-1, 0, 0, -1, 0}};
const IntMatrix kA22{{0, 1, 0, 1}, {-1, 0, -1, 0}, {0, 1, 0, 1}, {-1, 0, -1, 0}};

// x1^a x2^b y1^c y2^d with coefficient k
LaurentPoly mono(const ContextPtr& ctx, long long a, long long b, long long c, long long d, long long k = 1) {
  return LaurentPoly::monomial(ctx, {a, b, c, d}, Int(static_cast<long>(k)));
}

LaurentPoly swap_indices(const LaurentPoly& p) {
  const ContextPtr& ctx = p.context();
  LaurentPoly out(ctx);
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    std::swap(f[0], f[1]);
    std::swap(f[2], f[3]);
    out.add_term(f, c);
  }
  return out;
}

IntMatrix swap_matrix(const IntMatrix& B) { return IntMatrix{{0, B(1, 0)}, {B(0, 1), 0}}; }

}  // namespace

TEST_CASE("rank-2 theta_delta closed forms") {
  auto ctx = make_context(2, 2);
  std::vector<std::pair<IntMatrix, LaurentPoly>> cases{
      {IntMatrix{{0, 2}, {-2, 0}}, mono(ctx, -1, 1, 0, 0) + mono(ctx, -1, -1, 1, 0) + mono(ctx, 1, -1, 1, 1)},
      {IntMatrix{{0, 4}, {-1, 0}}, mono(ctx, -2, 1, 0, 0) + mono(ctx, -2, 0, 1, 0, 2) + mono(ctx, -2, -1, 2, 0) +
                                       mono(ctx, 2, -1, 2, 1)},
      {IntMatrix{{0, 1}, {-4, 0}}, mono(ctx, -1, 2, 0, 0) + mono(ctx, -1, -2, 1, 0) + mono(ctx, 0, -2, 1, 1, 2) +
                                       mono(ctx, 1, -2, 1, 2)},
  };
  for (const auto& [B, expected] : cases) {
    CHECK(rank2_theta_delta(B, ctx) == expected);
    CHECK(rank2_theta_delta(swap_matrix(B), ctx) == swap_indices(expected));
    ThetaEngine e(B);
    CHECK(e.theta_delta().poly == expected);
    CHECK(denominator_vector_of(expected) == e.data().delta);
  }
  CHECK_THROWS_AS(rank2_theta_delta(kA2, make_context(3, 3)), Error);
}

TEST_CASE("rank-2 theta_k_delta agrees with broken lines") {
  for (const IntMatrix& B0 : {IntMatrix{{0, 2}, {-2, 0}}, IntMatrix{{0, 4}, {-1, 0}}, IntMatrix{{0, 1}, {-4, 0}}}) {
    for (const IntMatrix& B : {B0, swap_matrix(B0)}) {
      ThetaEngine e(B);
      ScatteringDiagram2 d = complete_scattering_rank2(B, 8);
      for (int k = 1; k <= 3; ++k) {
        ThetaFunction t = e.theta_k_delta(k);
        LaurentPoly bl = theta_via_broken_lines(d, t.label, 8);
        CHECK_MESSAGE(truncate_y(t.poly, 8) == bl, B.to_string() << " k=" << k);
      }
    }
  }
}

TEST_CASE("theta_k_delta satisfies the Chebyshev recursion") {
  for (const auto& B : {kA1, kA2, kC2, kA3}) {
    ThetaEngine e(B);
    LaurentPoly t = e.theta_delta().poly, yd = e.y_monomial(e.data().delta);
    // first-kind Chebyshev: T_0 = 2, T_1 = t, T_k = t T_{k-1} - yd T_{k-2}
    std::vector<LaurentPoly> T{e.one().scaled(2), t};
    for (int k = 2; k <= 5; ++k) T.push_back(t * T[k - 1] - yd * T[k - 2]);
    for (int k = 1; k <= 5; ++k) {
      ThetaFunction tk = e.theta_k_delta(k);
      CHECK(tk.poly == T[k]);
      CHECK(tk.label == k * nu_c(e.data(), e.data().delta));
      CHECK(denominator_vector_of(tk.poly) == k * e.data().delta);
    }
    CHECK_THROWS_AS(e.theta_k_delta(0), Error);
  }
}

TEST_CASE("theta_delta does not depend on the choice of beta") {
  for (const auto& B : {kA2, kA3, kC2, kA4, kA22}) {
    ThetaEngine e(B);
    LaurentPoly t = e.theta_delta().poly;
    for (int o = 0; o < static_cast<int>(e.tubes().size()); ++o)
      for (int i = 0; i < e.tubes()[o].size(); ++i) CHECK(e.theta_delta_from(o, i).poly == t);
    CHECK(pointed_form(t, e.principal_matrix()).g == nu_c(e.data(), e.data().delta).c);
  }
}

TEST_CASE("theta functions of real roots are cluster variables") {
  ThetaEngine e(kA2);
  for (const auto& r : all_arcs(e.tubes(), 0)) {
    ThetaFunction t = e.theta_tube_root(r);
    CHECK(t.label == nu_c(e.data(), tube_root_vector(e.tubes()[0], r)));
    CHECK(pointed_form(t.poly, e.principal_matrix()).g == t.label.c);
  }
  CHECK(e.theta_real(RootVec::zero(3)).poly == e.one());
}

TEST_CASE("expanding the square of theta_delta") {
  for (const auto& B : {kA1, kA2, kC2}) {
    ThetaEngine e(B);
    ThetaFunction t = e.theta_delta();
    ThetaCombo c = e.expand_product(t, t);
    CHECK(c.terms.size() == 2);
    CHECK(c.on_dominance_chain);
    CHECK(c.terms.at(2 * t.label) == e.one());
    CHECK(c.terms.at(WeightVec::zero(e.n())) == e.y_monomial(e.data().delta).scaled(2));
    CHECK(e.reconstruct(c) == t.poly * t.poly);
  }
}

TEST_CASE("products in the imaginary wall expand on the dominance chain") {
  ThetaEngine e(kA3);
  const auto& tubes = e.tubes();
  for (int o = 0; o < static_cast<int>(tubes.size()); ++o)
    for (const auto& r : all_arcs(tubes, o)) {
      ThetaFunction a = e.theta_tube_root(r), d = e.theta_delta();
      ThetaCombo c = e.expand_product(a, d);
      CHECK(c.on_dominance_chain);
      CHECK(e.reconstruct(c) == a.poly * d.poly);
      for (const auto& [kv, coef] : c.terms) CHECK(e.in_imaginary_wall(kv));
    }
}

TEST_CASE("peeling budget") {
  ThetaEngine e(kA2);
  ThetaFunction t = e.theta_k_delta(3);
  try {
    e.expand_product(t, t, 1);
    FAIL("expected NonTerminating");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonTerminating);
  }
}

TEST_CASE("imaginary and real exchange relations") {
  for (const auto& B : {kA2, kA3, kC2, kA4, kA22}) {
    ThetaEngine e(B);
    for (int o = 0; o < static_cast<int>(e.tubes().size()); ++o) {
      int k = e.tubes()[o].size();
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          if (i == j) continue;
          ImaginaryExchangeRecord r;
          CHECK_NOTHROW(r = e.imaginary_exchange(o, i, j));
          CHECK(r.lhs == r.term_delta + r.term_phi + r.term_phi_prime);
          CHECK(r.product_vacuous == (k == 2));
        }
      for (const auto& J : all_maximal_compatible_sets(k, o))
        for (const auto& g : J) {
          if (g.length == k - 1) continue;
          RealExchangeRecord r;
          CHECK_NOTHROW(r = e.real_exchange(o, J, g));
          CHECK(r.lhs == r.term_plain + r.term_coeff);
          CHECK(r.gamma_prime == exchange_partner(k, J, g));
        }
    }
  }
  ThetaEngine e(kA2);
  CHECK_THROWS_AS(e.imaginary_exchange(0, 1, 1), Error);
}

TEST_CASE("specializing coefficients") {
  ThetaEngine e(kA1);
  auto free_ctx = make_context(2, 0);
  LaurentPoly expected = LaurentPoly::monomial(free_ctx, {1, -1}) + LaurentPoly::monomial(free_ctx, {-1, 1}) +
                         LaurentPoly::monomial(free_ctx, {-1, -1});
  CHECK(specialize_coefficients(e.theta_delta().poly, kA1, free_ctx) == expected);
}

TEST_CASE("imaginary-wall labels") {
  ThetaEngine e(kA2);
  CHECK(e.in_imaginary_wall(nu_c(e.data(), e.data().delta)));
  CHECK(e.in_imaginary_wall(WeightVec::zero(3)));
  CHECK(!e.in_imaginary_wall(WeightVec({1, 0, 0})));
  RootVec phi = e.data().delta + tube_root_vector(e.tubes()[0], {0, 0, 1});
  ThetaFunction t = e.theta_imaginary(phi);
  CHECK(t.poly == e.theta_delta().poly * e.theta_tube_root({0, 0, 1}).poly);
  CHECK(e.theta_label(t.label).poly == t.poly);
}
