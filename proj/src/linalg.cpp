#include "cluster/linalg.hpp"

#include <numeric>

namespace cluster {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), std::vector<Rat>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i][j] = Rat(static_cast<long>(m(i, j)));
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

Rat determinant(RatMatrix m) {
  size_t n = m.size();
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

int rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rat>> kernel(const RatMatrix& m) {
  RatMatrix a = m;
  auto piv = rref(a);
  size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<bool> is_piv(cols, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(v);
  }
  return basis;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  size_t n = m.size();
  RatMatrix a(n, std::vector<Rat>(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  auto piv = rref(a);
  if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) return std::nullopt;
  RatMatrix inv(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

std::optional<std::vector<Rat>> solve_any(const RatMatrix& m, const std::vector<Rat>& b) {
  size_t rows = m.size();
  if (rows == 0) return std::vector<Rat>{};
  size_t cols = m[0].size();
  RatMatrix a(rows, std::vector<Rat>(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    a[i][cols] = b[i];
  }
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == static_cast<int>(cols)) return std::nullopt;
  std::vector<Rat> x(cols, 0);
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][cols];
  return x;
}

std::optional<std::vector<Rat>> solve_unique(const RatMatrix& m, const std::vector<Rat>& b) {
  if (m.empty()) return std::vector<Rat>{};
  if (rank(m) != static_cast<int>(m[0].size())) return std::nullopt;
  return solve_any(m, b);
}

ColumnSolver::ColumnSolver(const IntMatrix& m) : m_(m) {
  // Greedily select independent rows.
  RatMatrix chosen;
  for (int i = 0; i < m.rows() && static_cast<int>(rows_.size()) < m.cols(); ++i) {
    RatMatrix trial = chosen;
    std::vector<Rat> r(m.cols());
    for (int j = 0; j < m.cols(); ++j) r[j] = Rat(static_cast<long>(m(i, j)));
    trial.push_back(r);
    if (rank(trial) == static_cast<int>(trial.size())) {
      chosen = trial;
      rows_.push_back(i);
    }
  }
  if (static_cast<int>(rows_.size()) == m.cols()) {
    auto inv = inverse(chosen);
    if (inv) {
      inv_ = *inv;
      ok_ = true;
    }
  }
}

std::optional<std::vector<long long>> ColumnSolver::solve_integer(const std::vector<long long>& b) const {
  if (!ok_) return std::nullopt;
  int n = m_.cols();
  std::vector<long long> x(n);
  for (int i = 0; i < n; ++i) {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += inv_[i][j] * Rat(static_cast<long>(b[rows_[j]]));
    if (s.get_den() != 1) return std::nullopt;
    x[i] = s.get_num().get_si();
  }
  if (m_.apply(x) != b) return std::nullopt;
  return x;
}

std::vector<long long> primitive_integer(const std::vector<Rat>& v) {
  mpz_class l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  std::vector<mpz_class> w;
  mpz_class g = 0;
  for (const auto& q : v) {
    mpz_class x = q.get_num() * (l / q.get_den());
    w.push_back(x);
    g = gcd(g, x);
  }
  std::vector<long long> out;
  for (auto& x : w) out.push_back(g == 0 ? 0 : mpz_class(x / g).get_si());
  return out;
}

}  // namespace cluster
