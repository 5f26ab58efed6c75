#include "doctest.h"

#include <random>

#include "cluster/errors.hpp"
#include "cluster/poly.hpp"
#include "test_util.hpp"

using namespace cluster;

TEST_CASE("mul expands products") {
  auto ctx = VarContext::make(2, 2);
  LaurentPoly x1 = LaurentPoly::variable(ctx, 0), x2 = LaurentPoly::variable(ctx, 1), y1 = LaurentPoly::variable(ctx, 2);
  LaurentPoly one = LaurentPoly::constant(ctx, 1);
  CHECK((x1 + one) * (x1 - one) == x1 * x1 - one);
  CHECK(x1 * one == x1);
  LaurentPoly p = (x2 * x2 + y1) * x1.monomial_inverse();
  // term-by-term oracle
  LaurentPoly expect = LaurentPoly::monomial(ctx, {-1, 2, 0, 0}) + LaurentPoly::monomial(ctx, {-1, 0, 1, 0});
  CHECK(p == expect);
  CHECK(p.to_string() == "x1^-1*x2^2 + x1^-1*y1");
}

TEST_CASE("context mismatch is rejected") {
  auto a = VarContext::make(2, 0);
  auto b = VarContext::make(3, 0);
  CHECK_THROWS_AS(LaurentPoly::variable(a, 0) * LaurentPoly::variable(b, 0), Error);
}

TEST_CASE("exact division") {
  auto ctx = VarContext::make(2, 2);
  LaurentPoly x1 = LaurentPoly::variable(ctx, 0), x2 = LaurentPoly::variable(ctx, 1), y1 = LaurentPoly::variable(ctx, 2);
  LaurentPoly one = LaurentPoly::constant(ctx, 1);
  CHECK(exact_div(x1 * x1 - one, x1 - one) == x1 + one);
  LaurentPoly p = x1 * x2 + y1 * y1;
  LaurentPoly q = exact_div(p, LaurentPoly::monomial(ctx, {1, 0, 1, 0}));
  CHECK(q == LaurentPoly::monomial(ctx, {0, 1, -1, 0}) + LaurentPoly::monomial(ctx, {-1, 0, 1, 0}));
  try {
    exact_div(x2 * x2 + y1, x1 + one);
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
  CHECK_THROWS_AS(exact_div(x1 + one, LaurentPoly::constant(ctx, 2)), Error);
}

TEST_CASE("substitute") {
  auto ctx = VarContext::make(2, 2);
  LaurentPoly x1 = LaurentPoly::variable(ctx, 0), x2 = LaurentPoly::variable(ctx, 1), y1 = LaurentPoly::variable(ctx, 2);
  LaurentPoly p = (x2 * x2 + y1) * x1.monomial_inverse();
  auto one = LaurentPoly::constant(ctx, 1);
  std::vector<LaurentPoly> spec = {x1, x2, one, one};
  CHECK(substitute(p, spec, ctx) == (x2 * x2 + one) * x1.monomial_inverse());
  std::vector<LaurentPoly> id = {x1, x2, y1, LaurentPoly::variable(ctx, 3)};
  CHECK(substitute(p, id, ctx) == p);
  // yhat_1 for B=[[0,2],[-2,0]]: y1 * x1^{b11} x2^{b21}
  LaurentPoly yhat1 = substitute(LaurentPoly::monomial(ctx, {0, -2, 1, 0}), id, ctx);
  CHECK(yhat1 == y1 * x2.pow(2).monomial_inverse());
  std::vector<LaurentPoly> bad = {x1 + one, x2, y1, one};
  try {
    substitute(p, bad, ctx);
    FAIL("expected NonInvertibleImage");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonInvertibleImage);
  }
  // the dividing variant clears non-monomial denominators when the image is Laurent
  std::vector<LaurentPoly> img = {x1 + one, x1 * x1 - one, y1, one};
  CHECK(substitute_divide(x2 * x1.monomial_inverse(), img, ctx) == x1 - one);
  CHECK_THROWS_AS(substitute_divide(x1.monomial_inverse(), img, ctx), Error);
}

TEST_CASE("pointed form") {
  auto ctx = VarContext::make(2, 2);
  IntMatrix Bt = {{0, 2}, {-2, 0}, {1, 0}, {0, 1}};
  LaurentPoly x1 = LaurentPoly::variable(ctx, 0), x2 = LaurentPoly::variable(ctx, 1), y1 = LaurentPoly::variable(ctx, 2),
              y2 = LaurentPoly::variable(ctx, 3);
  auto pf = pointed_form(x1, Bt);
  CHECK(pf.g == std::vector<long long>{1, 0});
  CHECK(pf.tail == LaurentPoly::constant(ctx, 1));
  LaurentPoly v = exact_div(x2 * x2 + y1, x1);
  pf = pointed_form(v, Bt);
  CHECK(pf.g == std::vector<long long>{-1, 2});
  CHECK(pf.f.size() == 2);
  CHECK(pf.f.at({1, 0}) == 1);
  LaurentPoly theta = exact_div(x2 * x2 + y1 + y1 * y2 * x1 * x1, x1 * x2);
  pf = pointed_form(theta, Bt);
  CHECK(pf.g == std::vector<long long>{-1, 1});
  CHECK(pf.f.size() == 3);
  CHECK(pf.f.at({0, 0}) == 1);
  CHECK(pf.f.at({1, 0}) == 1);
  CHECK(pf.f.at({1, 1}) == 1);
  CHECK_THROWS_AS(pointed_form(x1 + x2, Bt), Error);
}

TEST_CASE("ring axioms and division round trip on random inputs") {
  auto ctx = VarContext::make(3, 2);
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 60; ++trial) {
    LaurentPoly a = testutil::random_poly(ctx, rng), b = testutil::random_poly(ctx, rng), c = testutil::random_poly(ctx, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK(exact_div(a * b, b) == a);
    std::vector<LaurentPoly> img;
    for (int i = 0; i < ctx->size(); ++i)
      img.push_back(i == 1 ? LaurentPoly::variable(ctx, 0) * LaurentPoly::variable(ctx, 2)
                           : LaurentPoly::variable(ctx, i) * LaurentPoly::constant(ctx, i == 0 ? -1 : 1));
    CHECK(substitute(a * b, img, ctx) == substitute(a, img, ctx) * substitute(b, img, ctx));
  }
}
