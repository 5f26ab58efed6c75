#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cluster/matrix.hpp"

namespace cluster {

constexpr int kMaxVars = 16;
using Exponent = std::array<int32_t, kMaxVars>;
using Int = mpz_class;

// Variables x_1..x_n followed by tropical variables u_1..u_m.
class VarContext {
 public:
  static std::shared_ptr<const VarContext> make(int n, int m, std::vector<std::string> names = {});

  int n() const { return n_; }
  int m() const { return m_; }
  int size() const { return n_ + m_; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent
  bool same_as(const VarContext& o) const { return n_ == o.n_ && m_ == o.m_ && names_ == o.names_; }

 private:
  VarContext(int n, int m, std::vector<std::string> names) : n_(n), m_(m), names_(std::move(names)) {}
  int n_;
  int m_;
  std::vector<std::string> names_;
};
using ContextPtr = std::shared_ptr<const VarContext>;

// Graded lexicographic order, largest first.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

Exponent zero_exponent();
Exponent exponent_from(const std::vector<long long>& v);

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Int, GrlexGreater>;

  LaurentPoly() = default;
  explicit LaurentPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  static LaurentPoly constant(ContextPtr ctx, const Int& c);
  static LaurentPoly variable(ContextPtr ctx, int i);
  static LaurentPoly monomial(ContextPtr ctx, const std::vector<long long>& e, const Int& c = 1);
  static LaurentPoly monomial(ContextPtr ctx, const Exponent& e, const Int& c = 1);
  static LaurentPoly monomial(ContextPtr ctx, std::initializer_list<long long> e, const Int& c = 1) {
    return monomial(std::move(ctx), std::vector<long long>(e), c);
  }

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const Int& leading_coeff() const { return terms_.begin()->second; }
  Int coeff(const Exponent& e) const;

  void add_term(const Exponent& e, const Int& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly pow(unsigned e) const;
  LaurentPoly scaled(const Int& c) const;
  LaurentPoly shifted(const Exponent& e) const;  // multiply by x^e
  // Multiplicative inverse of a unit monomial (coefficient ±1).
  LaurentPoly monomial_inverse() const;

  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  std::vector<long long> exponent_vector(const Exponent& e) const;
  std::string to_string() const;

 private:
  void check_same(const LaurentPoly& o) const;
  ContextPtr ctx_;
  TermMap terms_;
};

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

// images[i] is the image of variable i, living in `target`.
LaurentPoly substitute(const LaurentPoly& p, const std::vector<LaurentPoly>& images, const ContextPtr& target);
// Like substitute, but negative powers of non-monomial images are cleared by one exact division
// at the end; throws NotDivisible when the image is not a Laurent polynomial.
LaurentPoly substitute_divide(const LaurentPoly& p, const std::vector<LaurentPoly>& images,
                              const ContextPtr& target);

struct PointedForm {
  std::vector<long long> g;  // weight coordinates (x-part of the leading monomial)
  LaurentPoly tail;          // p / x^g
  std::map<std::vector<long long>, Int> f;  // tail as a polynomial in yhat: exponent beta -> coefficient
};

// Btilde is the (n+m) x n extended exchange matrix defining yhat_j.
PointedForm pointed_form(const LaurentPoly& p, const IntMatrix& Btilde);

}  // namespace cluster
