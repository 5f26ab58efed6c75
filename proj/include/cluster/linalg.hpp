#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "cluster/matrix.hpp"

namespace cluster {

using Rat = mpq_class;
using RatMatrix = std::vector<std::vector<Rat>>;

inline Rat rat(long long a, long long b = 1) {
  Rat r{mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b))};
  r.canonicalize();
  return r;
}

RatMatrix to_rat(const IntMatrix& m);
Rat determinant(RatMatrix m);
int rank(RatMatrix m);
// Basis of the right kernel.
std::vector<std::vector<Rat>> kernel(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
// Unique solution of m x = b when m has full column rank and the system is consistent.
std::optional<std::vector<Rat>> solve_unique(const RatMatrix& m, const std::vector<Rat>& b);
// Any solution of m x = b (free variables set to zero).
std::optional<std::vector<Rat>> solve_any(const RatMatrix& m, const std::vector<Rat>& b);

// Precomputed left inverse for repeated exact solves with a full-column-rank integer matrix.
class ColumnSolver {
 public:
  explicit ColumnSolver(const IntMatrix& m);
  bool full_rank() const { return ok_; }
  // Integer solution of m x = b, if it exists.
  std::optional<std::vector<long long>> solve_integer(const std::vector<long long>& b) const;

 private:
  IntMatrix m_;
  bool ok_ = false;
  std::vector<int> rows_;  // independent rows
  RatMatrix inv_;          // inverse of the square submatrix on rows_
};

std::vector<long long> primitive_integer(const std::vector<Rat>& v);

}  // namespace cluster
