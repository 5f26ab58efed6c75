#pragma once

#include <random>

#include "cluster/poly.hpp"

namespace testutil {

inline cluster::LaurentPoly random_poly(const cluster::ContextPtr& ctx, std::mt19937& rng, int terms = 4, int span = 2) {
  std::uniform_int_distribution<int> ex(-span, span), co(-5, 5);
  cluster::LaurentPoly p(ctx);
  for (int t = 0; t < terms; ++t) {
    std::vector<long long> e(ctx->size());
    for (auto& v : e) v = ex(rng);
    p += cluster::LaurentPoly::monomial(ctx, e, co(rng));
  }
  return p;
}

}  // namespace testutil
