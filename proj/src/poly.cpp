#include "cluster/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/linalg.hpp"

namespace cluster {

ContextPtr VarContext::make(int n, int m, std::vector<std::string> names) {
  if (n < 1 || m < 0) throw Error(ErrorKind::InvalidArgument, "bad variable counts");
  if (n + m > kMaxVars) throw Error(ErrorKind::InvalidArgument, "too many variables (max 16)");
  if (names.empty()) {
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= m; ++i) names.push_back("y" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n + m) throw Error(ErrorKind::InvalidArgument, "name count mismatch");
  std::set<std::string> uniq(names.begin(), names.end());
  if (uniq.size() != names.size()) throw Error(ErrorKind::InvalidArgument, "duplicate variable names");
  return ContextPtr(new VarContext(n, m, std::move(names)));
}

int VarContext::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  long da = 0, db = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Exponent zero_exponent() {
  Exponent e{};
  e.fill(0);
  return e;
}

Exponent exponent_from(const std::vector<long long>& v) {
  if (v.size() > static_cast<size_t>(kMaxVars)) throw Error(ErrorKind::InvalidArgument, "exponent too long");
  Exponent e = zero_exponent();
  for (size_t i = 0; i < v.size(); ++i) e[i] = static_cast<int32_t>(v[i]);
  return e;
}

namespace {

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent e;
  for (int i = 0; i < kMaxVars; ++i) e[i] = a[i] + b[i];
  return e;
}

Exponent sub_exp(const Exponent& a, const Exponent& b) {
  Exponent e;
  for (int i = 0; i < kMaxVars; ++i) e[i] = a[i] - b[i];
  return e;
}

}  // namespace

LaurentPoly LaurentPoly::constant(ContextPtr ctx, const Int& c) {
  LaurentPoly p(std::move(ctx));
  p.add_term(zero_exponent(), c);
  return p;
}

LaurentPoly LaurentPoly::variable(ContextPtr ctx, int i) {
  if (i < 0 || i >= ctx->size()) throw Error(ErrorKind::IndexOutOfRange, "variable index");
  Exponent e = zero_exponent();
  e[i] = 1;
  return monomial(std::move(ctx), e);
}

LaurentPoly LaurentPoly::monomial(ContextPtr ctx, const std::vector<long long>& e, const Int& c) {
  if (static_cast<int>(e.size()) != ctx->size()) throw Error(ErrorKind::InvalidArgument, "exponent length");
  return monomial(std::move(ctx), exponent_from(e), c);
}

LaurentPoly LaurentPoly::monomial(ContextPtr ctx, const Exponent& e, const Int& c) {
  LaurentPoly p(std::move(ctx));
  p.add_term(e, c);
  return p;
}

Int LaurentPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_same(const LaurentPoly& o) const {
  if (ctx_ == o.ctx_) return;
  if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_))
    throw Error(ErrorKind::ContextMismatch, "operands live in different variable contexts");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same(b);
  LaurentPoly r(a.ctx_);
  if (a.is_zero() || b.is_zero()) return r;
  const LaurentPoly& big = a.size() >= b.size() ? a : b;
  const LaurentPoly& small = a.size() >= b.size() ? b : a;
  for (const auto& [es, cs] : small.terms_) {
    for (const auto& [eb, cb] : big.terms_) r.add_term(add_exp(es, eb), cs * cb);
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(ctx_, 1);
  LaurentPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::scaled(const Int& c) const {
  LaurentPoly r(ctx_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exponent& s) const {
  LaurentPoly r(ctx_);
  // Shifting preserves the grlex order, so hinted insertion stays linear.
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), add_exp(e, s), v);
  return r;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
  if (!is_monomial() || (leading_coeff() != 1 && leading_coeff() != -1))
    throw Error(ErrorKind::NonInvertibleImage, "not a unit monomial: " + to_string());
  Exponent e = leading_exponent();
  for (auto& v : e) v = -v;
  return monomial(ctx_, e, leading_coeff());
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  check_same(o);
  return terms_ == o.terms_;
}

std::vector<long long> LaurentPoly::exponent_vector(const Exponent& e) const {
  return std::vector<long long>(e.begin(), e.begin() + ctx_->size());
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool unit = true;
    for (int i = 0; i < ctx_->size(); ++i) unit = unit && e[i] == 0;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || unit) {
      os << mag.get_str();
      wrote = true;
    }
    for (int i = 0; i < ctx_->size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << ctx_->names()[i];
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

namespace {

Exponent min_exponent(const LaurentPoly& p, int nv) {
  Exponent m = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < nv; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

Exponent negated(Exponent e) {
  for (auto& v : e) v = -v;
  return e;
}

}  // namespace

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  if (a.is_zero()) return a;
  if (!(a.context() == b.context()) && !a.context()->same_as(*b.context()))
    throw Error(ErrorKind::ContextMismatch, "exact_div operands");
  const ContextPtr& ctx = a.context();
  int nv = ctx->size();
  if (b.is_monomial()) {
    const Int& c = b.leading_coeff();
    Exponent s = negated(b.leading_exponent());
    LaurentPoly q(ctx);
    for (const auto& [e, v] : a.terms()) {
      if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t()))
        throw Error(ErrorKind::NotDivisible, "coefficient not divisible");
      q.add_term(add_exp(e, s), v / c);
    }
    return q;
  }
  // Normalize both operands to genuine polynomials with no common monomial factor per variable,
  // then run leading-term elimination.
  Exponent ma = min_exponent(a, nv), mb = min_exponent(b, nv);
  LaurentPoly r = a.shifted(negated(ma));
  LaurentPoly bb = b.shifted(negated(mb));
  const Exponent lb = bb.leading_exponent();
  const Int lc = bb.leading_coeff();
  LaurentPoly q(ctx);
  while (!r.is_zero()) {
    Exponent lr = r.leading_exponent();
    Exponent d = sub_exp(lr, lb);
    for (int i = 0; i < nv; ++i)
      if (d[i] < 0) throw Error(ErrorKind::NotDivisible, a.to_string() + " by " + b.to_string());
    const Int& cr = r.leading_coeff();
    if (!mpz_divisible_p(cr.get_mpz_t(), lc.get_mpz_t()))
      throw Error(ErrorKind::NotDivisible, "leading coefficient not divisible");
    Int qc = cr / lc;
    q.add_term(d, qc);
    for (const auto& [e, v] : bb.terms()) r.add_term(add_exp(e, d), -qc * v);
  }
  return q.shifted(sub_exp(ma, mb));
}

LaurentPoly substitute(const LaurentPoly& p, const std::vector<LaurentPoly>& images, const ContextPtr& target) {
  const ContextPtr& src = p.context();
  if (static_cast<int>(images.size()) != src->size())
    throw Error(ErrorKind::InvalidArgument, "substitution needs one image per variable");
  for (const auto& im : images)
    if (!im.context()->same_as(*target)) throw Error(ErrorKind::ContextMismatch, "image context");
  std::vector<std::map<int, LaurentPoly>> cache(src->size());
  auto power = [&](int i, int e) -> const LaurentPoly& {
    auto it = cache[i].find(e);
    if (it != cache[i].end()) return it->second;
    LaurentPoly v = e >= 0 ? images[i].pow(static_cast<unsigned>(e))
                           : images[i].monomial_inverse().pow(static_cast<unsigned>(-e));
    return cache[i].emplace(e, std::move(v)).first->second;
  };
  LaurentPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly t = LaurentPoly::constant(target, c);
    for (int i = 0; i < src->size(); ++i) {
      if (e[i] == 0) continue;
      t *= power(i, e[i]);
    }
    out += t;
  }
  return out;
}

LaurentPoly substitute_divide(const LaurentPoly& p, const std::vector<LaurentPoly>& images,
                              const ContextPtr& target) {
  const ContextPtr& src = p.context();
  int nv = src->size();
  if (p.is_zero()) return LaurentPoly(target);
  Exponent lift = zero_exponent();
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < nv; ++i)
      if (e[i] < 0 && !(images[i].is_monomial() && abs(images[i].leading_coeff()) == 1)) lift[i] = std::max(lift[i], -e[i]);
  LaurentPoly num = substitute(p.shifted(lift), images, target);
  LaurentPoly den = LaurentPoly::constant(target, 1);
  for (int i = 0; i < nv; ++i)
    if (lift[i]) den *= images[i].pow(static_cast<unsigned>(lift[i]));
  return exact_div(num, den);
}

PointedForm pointed_form(const LaurentPoly& p, const IntMatrix& Btilde) {
  const ContextPtr& ctx = p.context();
  int n = ctx->n();
  if (Btilde.cols() != n || Btilde.rows() != ctx->size())
    throw Error(ErrorKind::InvalidArgument, "extended matrix shape does not match context");
  if (p.is_zero()) throw Error(ErrorKind::NotPointed, "zero polynomial");
  ColumnSolver solver(Btilde);
  if (!solver.full_rank())
    throw Error(ErrorKind::NotPointed, "yhat-monomials are not independent for this extended matrix");
  int nv = ctx->size();
  for (const auto& [lead, lc] : p.terms()) {
    if (lc != 1) continue;
    if (std::any_of(lead.begin() + n, lead.begin() + nv, [](int32_t v) { return v != 0; })) continue;
    std::map<std::vector<long long>, Int> f;
    bool ok = true;
    for (const auto& [e, c] : p.terms()) {
      std::vector<long long> diff(nv);
      for (int i = 0; i < nv; ++i) diff[i] = e[i] - lead[i];
      auto beta = solver.solve_integer(diff);
      if (!beta || std::any_of(beta->begin(), beta->end(), [](long long v) { return v < 0; })) {
        ok = false;
        break;
      }
      f[*beta] = c;
    }
    if (!ok) continue;
    PointedForm out;
    out.g.assign(lead.begin(), lead.begin() + n);
    Exponent shift = zero_exponent();
    for (int i = 0; i < n; ++i) shift[i] = -lead[i];
    out.tail = p.shifted(shift);
    out.f = std::move(f);
    return out;
  }
  throw Error(ErrorKind::NotPointed, p.to_string());
}

}  // namespace cluster
