#include "cluster/scatter2.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/log.hpp"

namespace cluster {

// ---------------------------------------------------------------- Series2

Series2::Series2(int order) : order_(order), c_(order + 1, std::vector<Int>(order + 1, 0)) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "negative order");
}

Series2 Series2::one(int order) {
  Series2 s(order);
  s.c_[0][0] = 1;
  return s;
}

Series2 Series2::operator*(const Series2& o) const {
  Series2 r(order_);
  for (int a = 0; a <= order_; ++a)
    for (int b = 0; a + b <= order_; ++b) {
      if (c_[a][b] == 0) continue;
      for (int c = 0; a + b + c <= order_; ++c)
        for (int d = 0; a + b + c + d <= order_; ++d)
          if (o.c_[c][d] != 0) r.c_[a + c][b + d] += c_[a][b] * o.c_[c][d];
    }
  return r;
}

Series2 Series2::inverse() const {
  if (c_[0][0] != 1) throw Error(ErrorKind::NonInvertibleImage, "series constant term is not 1");
  Series2 r(order_);
  r.c_[0][0] = 1;
  for (int deg = 1; deg <= order_; ++deg)
    for (int a = 0; a <= deg; ++a) {
      int b = deg - a;
      Int acc = 0;
      for (int c = 0; c <= a; ++c)
        for (int d = 0; d <= b; ++d)
          if (c + d > 0) acc += c_[c][d] * r.c_[a - c][b - d];
      r.c_[a][b] = -acc;
    }
  return r;
}

Series2 Series2::pow(long long e) const {
  Series2 base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Series2 r = one(order_);
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

bool Series2::is_one() const {
  for (int a = 0; a <= order_; ++a)
    for (int b = 0; a + b <= order_; ++b)
      if (c_[a][b] != ((a == 0 && b == 0) ? 1 : 0)) return false;
  return true;
}

std::string Wall2::to_string() const {
  std::ostringstream os;
  os << "normal " << normal.to_string() << (full_line ? " line through " : " ray ") << "(" << dir[0] << ","
     << dir[1] << ") f = ";
  bool first = true;
  for (size_t j = 0; j < f.size(); ++j) {
    if (f[j] == 0) continue;
    if (!first) os << (f[j] > 0 ? " + " : " - ");
    else if (f[j] < 0) os << "-";
    Int a = abs(f[j]);
    if (j == 0) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << "t^" << j;
    }
    first = false;
  }
  return os.str();
}

namespace {

long long gcdll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Primitive coroot coordinates of the primitive root beta.
std::array<long, 2> coroot(const std::vector<long long>& s, const RootVec& beta) {
  long long l = std::lcm(s[0], s[1]);
  long long c0 = beta[0] * (l / s[0]);
  long long c1 = beta[1] * (l / s[1]);
  long long g = gcdll(c0, c1);
  return {static_cast<long>(c0 / g), static_cast<long>(c1 / g)};
}

std::vector<long long> outgoing_dir(const IntMatrix& B, const RootVec& beta) {
  std::vector<long long> d = B.apply(beta.c);
  for (auto& v : d) v = -v;
  long long g = gcdll(d[0], d[1]);
  if (g == 0) throw Error(ErrorKind::InvalidArgument, "degenerate wall direction");
  for (auto& v : d) v /= g;
  return d;
}

// Angular position of an integer direction: half-plane, then cross-product order.
bool angle_less(const std::vector<long long>& u, const std::vector<long long>& v) {
  auto half = [](const std::vector<long long>& w) { return (w[1] > 0 || (w[1] == 0 && w[0] > 0)) ? 0 : 1; };
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return u[0] * v[1] - u[1] * v[0] > 0;
}

struct Ray {
  std::vector<long long> dir;
  int wall;
};

std::vector<Ray> sorted_rays(const ScatteringDiagram2& d) {
  std::vector<Ray> rays;
  for (size_t w = 0; w < d.walls.size(); ++w) {
    const auto& wl = d.walls[w];
    rays.push_back({wl.dir, static_cast<int>(w)});
    if (wl.full_line) rays.push_back({{-wl.dir[0], -wl.dir[1]}, static_cast<int>(w)});
  }
  std::stable_sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) { return angle_less(a.dir, b.dir); });
  return rays;
}

Series2 wall_series(const Wall2& w, int order) {
  Series2 F(order);
  for (size_t j = 0; j < w.f.size(); ++j) {
    long long a = static_cast<long long>(j) * w.normal[0];
    long long b = static_cast<long long>(j) * w.normal[1];
    if (a + b > order) break;
    F.at(static_cast<int>(a), static_cast<int>(b)) += w.f[j];
  }
  return F;
}

using Aut = std::array<Series2, 2>;  // x_i -> x_i * G_i(yhat)

// Substitute yhat_j -> yhat_j * U_j in G.
Series2 substitute(const Series2& G, const std::array<Series2, 2>& U) {
  int N = G.order();
  std::vector<Series2> p1(N + 1, Series2::one(N)), p2(N + 1, Series2::one(N));
  Series2 s1(N), s2(N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; a + b < N; ++b) {
      s1.at(a + 1, b) = U[0].at(a, b);
      s2.at(a, b + 1) = U[1].at(a, b);
    }
  for (int k = 1; k <= N; ++k) {
    p1[k] = p1[k - 1] * s1;
    p2[k] = p2[k - 1] * s2;
  }
  Series2 r(N);
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b) {
      if (G.at(a, b) == 0) continue;
      Series2 t = p1[a] * p2[b];
      for (int c = 0; c <= N; ++c)
        for (int d = 0; c + d <= N; ++d) r.at(c, d) += G.at(a, b) * t.at(c, d);
    }
  return r;
}

// h after g: (h o g)(x_i) = x_i H_i * G_i(h(yhat)).
Aut compose(const Aut& h, const Aut& g, const IntMatrix& B) {
  std::array<Series2, 2> U;
  for (int j = 0; j < 2; ++j) U[j] = h[0].pow(B(0, j)) * h[1].pow(B(1, j));
  return {h[0] * substitute(g[0], U), h[1] * substitute(g[1], U)};
}

Aut crossing(const Wall2& w, const std::vector<long long>& s, int sign, int order) {
  auto n = coroot(s, w.normal);
  Series2 F = wall_series(w, order);
  return {F.pow(sign * n[0]), F.pow(sign * n[1])};
}

}  // namespace

std::array<Series2, 2> loop_product(const ScatteringDiagram2& d) {
  Aut P = {Series2::one(d.order), Series2::one(d.order)};
  for (const auto& r : sorted_rays(d)) {
    const Wall2& w = d.walls[r.wall];
    auto n = coroot(d.s, w.normal);
    long long v0 = -r.dir[1], v1 = r.dir[0];
    long long pv = v0 * n[0] + v1 * n[1];
    int sign = pv < 0 ? 1 : -1;
    P = compose(crossing(w, d.s, sign, d.order), P, d.B);
  }
  return P;
}

ScatteringDiagram2 complete_scattering_rank2(const IntMatrix& B, int order) {
  if (B.rows() != 2 || B.cols() != 2) throw Error(ErrorKind::InvalidArgument, "rank-2 exchange matrix expected");
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be positive");
  ScatteringDiagram2 d;
  d.B = B;
  d.s = symmetrizer_inverse(B);
  d.order = order;
  if (B(0, 1) == 0) throw Error(ErrorKind::InvalidArgument, "exchange matrix must be nonzero");
  for (int i = 0; i < 2; ++i) {
    Wall2 w;
    w.normal = RootVec::unit(2, i);
    w.dir = i == 0 ? std::vector<long long>{0, 1} : std::vector<long long>{1, 0};
    w.full_line = true;
    w.f = std::vector<Int>(order + 1, 0);
    w.f[0] = 1;
    w.f[1] = 1;
    d.walls.push_back(w);
  }
  std::map<RootVec, int> index;
  for (int k = 2; k <= order; ++k) {
    Aut P = loop_product(d);
    for (int a = 0; a <= k; ++a) {
      int b = k - a;
      Int e0 = P[0].at(a, b), e1 = P[1].at(a, b);
      if (e0 == 0 && e1 == 0) continue;
      long long g = gcdll(a, b);
      RootVec beta0(std::vector<long long>{a / g, b / g});
      if (beta0[0] == 0 || beta0[1] == 0)
        throw Error(ErrorKind::IdentityViolated, "correction needed on an initial wall");
      auto it = index.find(beta0);
      if (it == index.end()) {
        Wall2 w;
        w.normal = beta0;
        w.dir = outgoing_dir(B, beta0);
        w.f = std::vector<Int>(order / static_cast<int>(beta0[0] + beta0[1]) + 1, 0);
        w.f[0] = 1;
        d.walls.push_back(w);
        it = index.emplace(beta0, static_cast<int>(d.walls.size()) - 1).first;
      }
      Wall2& w = d.walls[it->second];
      auto n = coroot(d.s, beta0);
      long long pv = -w.dir[1] * n[0] + w.dir[0] * n[1];
      int sign = pv < 0 ? 1 : -1;
      // contribution of f = 1 + c t^g at this degree is sign * c * n_i
      int i = n[0] != 0 ? 0 : 1;
      Int num = i == 0 ? e0 : e1;
      Int den = Int(static_cast<long>(-sign * n[i]));
      if (num % den != 0) throw Error(ErrorKind::IdentityViolated, "non-integral wall correction");
      Int c = num / den;
      if (e0 != -sign * c * n[0] || e1 != -sign * c * n[1])
        throw Error(ErrorKind::IdentityViolated, "loop error is not proportional to the wall normal");
      std::vector<Int> nf(w.f.size(), 0);
      for (size_t p = 0; p < w.f.size(); ++p) {
        nf[p] += w.f[p];
        if (p + g < w.f.size()) nf[p + g] += c * w.f[p];
      }
      w.f = nf;
    }
  }
  d.consistent = true;
  Aut P = loop_product(d);
  d.consistent = P[0].is_one() && P[1].is_one();
  log_debug("scattering diagram: " + std::to_string(d.walls.size()) + " walls, consistent=" + std::to_string(d.consistent));
  return d;
}

// ---------------------------------------------------------------- broken lines

Point2 default_endpoint() { return {rat(1) + rat(1, 997), rat(2) + rat(1, 1009)}; }

ContextPtr rank2_context() { return make_context(2, 2); }

LaurentPoly truncate_y(const LaurentPoly& p, int order) {
  LaurentPoly r(p.context());
  int n = p.context()->n();
  for (const auto& [e, c] : p.terms()) {
    long long deg = 0;
    for (int j = n; j < p.context()->size(); ++j) deg += e[j];
    if (deg <= order) r.add_term(e, c);
  }
  return r;
}

namespace {

Rat pair_rc(const std::array<long, 2>& n, const Point2& p) { return p[0] * n[0] + p[1] * n[1]; }

long long pair_wc(const std::array<long, 2>& n, const WeightVec& w) { return w[0] * n[0] + w[1] * n[1]; }

struct Hit {
  Rat t;
  Point2 q;
  int wall;
};

// Intersections of the open ray p + t*mu (t > 0) with the walls.
std::vector<Hit> ray_hits(const ScatteringDiagram2& d, const Point2& p, const WeightVec& mu) {
  std::vector<Hit> hits;
  for (size_t w = 0; w < d.walls.size(); ++w) {
    const auto& wl = d.walls[w];
    auto n = coroot(d.s, wl.normal);
    Rat num = pair_rc(n, p);
    long long den = pair_wc(n, mu);
    if (den == 0) {
      if (num == 0) throw Error(ErrorKind::InvalidArgument, "broken line runs along a wall; endpoint not generic");
      continue;
    }
    Rat t = -num / Rat(static_cast<long>(den));
    if (t <= 0) continue;
    Point2 q = {p[0] + t * static_cast<long>(mu[0]), p[1] + t * static_cast<long>(mu[1])};
    // position along the wall direction
    Rat along = q[0] * static_cast<long>(wl.dir[0]) + q[1] * static_cast<long>(wl.dir[1]);
    if (q[0] == 0 && q[1] == 0) throw Error(ErrorKind::InvalidArgument, "broken line through the origin; endpoint not generic");
    if (!wl.full_line && along < 0) continue;
    hits.push_back({t, q, static_cast<int>(w)});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });
  for (size_t i = 1; i < hits.size(); ++i)
    if (hits[i].t == hits[i - 1].t)
      throw Error(ErrorKind::InvalidArgument, "broken line meets two walls at one point; endpoint not generic");
  return hits;
}

std::vector<Int> series_pow1(const std::vector<Int>& f, long long e, size_t len) {
  std::vector<Int> r(len, 0), base(len, 0);
  r[0] = 1;
  for (size_t i = 0; i < std::min(len, f.size()); ++i) base[i] = f[i];
  auto mul = [len](const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> c(len, 0);
    for (size_t i = 0; i < len; ++i)
      if (a[i] != 0)
        for (size_t j = 0; i + j < len; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  for (long long k = 0; k < e; ++k) r = mul(r, base);
  return r;
}

// Backward record: exponent of a segment, its y-degree, and the bend coefficient leading into the next one.
struct BackRec {
  WeightVec mu;
  RootVec y;
  Int c_next;
};

void trace_back(const ScatteringDiagram2& d, const Point2& p, std::vector<BackRec>& recs, std::vector<Point2>& bends,
                std::vector<BrokenLine2>& out) {
  const WeightVec mu = recs.back().mu;
  const RootVec remaining = recs.back().y;
  auto hits = ray_hits(d, p, mu);
  if (remaining.is_zero()) {
    BrokenLine2 L;
    Int coeff = 1;
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
      L.segments.push_back({it->mu, it->y, coeff});
      coeff *= it->c_next;
    }
    L.bends.assign(bends.rbegin(), bends.rend());
    out.push_back(std::move(L));
    return;
  }
  for (const auto& h : hits) {
    const Wall2& wl = d.walls[h.wall];
    auto n = coroot(d.s, wl.normal);
    for (long long j = 1;; ++j) {
      RootVec step = j * wl.normal;
      if (step[0] > remaining[0] || step[1] > remaining[1]) break;
      WeightVec mu1 = mu - WeightVec(d.B.apply(step.c));
      long long e = pair_wc(n, mu1);
      if (e < 0) e = -e;
      if (e == 0) continue;
      auto pw = series_pow1(wl.f, e, static_cast<size_t>(j) + 1);
      const Int cj = pw[static_cast<size_t>(j)];
      if (cj == 0) continue;
      recs.push_back({mu1, remaining - step, cj});
      bends.push_back(h.q);
      trace_back(d, h.q, recs, bends, out);
      recs.pop_back();
      bends.pop_back();
    }
  }
}

}  // namespace

std::vector<BrokenLine2> enumerate_broken_lines_rank2(const ScatteringDiagram2& d, const WeightVec& lambda,
                                                      const Point2& chi, int order) {
  if (lambda.size() != 2) throw Error(ErrorKind::InvalidArgument, "rank-2 weight expected");
  if (order > d.order) throw Error(ErrorKind::InvalidArgument, "order exceeds the diagram's order");
  for (const auto& wl : d.walls) {
    auto n = coroot(d.s, wl.normal);
    if (pair_rc(n, chi) == 0) throw Error(ErrorKind::InvalidArgument, "endpoint lies on a wall");
  }
  std::vector<BrokenLine2> out;
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) {
      RootVec beta(std::vector<long long>{a, b});
      WeightVec mu = lambda + WeightVec(d.B.apply(beta.c));
      std::vector<BackRec> recs{{mu, beta, 1}};
      std::vector<Point2> bends;
      trace_back(d, chi, recs, bends, out);
    }
  return out;
}

LaurentPoly theta_via_broken_lines(const ScatteringDiagram2& d, const WeightVec& lambda, int order,
                                   const Point2& chi) {
  ContextPtr ctx = rank2_context();
  LaurentPoly r(ctx);
  for (const auto& L : enumerate_broken_lines_rank2(d, lambda, chi, order)) {
    const auto& f = L.final_segment();
    r.add_term(exponent_from({f.exponent[0], f.exponent[1], f.y[0], f.y[1]}), f.coeff);
  }
  return r;
}

Point2 endpoint_near(const ScatteringDiagram2& d, const WeightVec& lambda) {
  if (lambda.is_zero()) return default_endpoint();
  long long g = gcdll(lambda[0], lambda[1]);
  std::vector<long long> dir{lambda[0] / g, lambda[1] / g};
  auto rays = sorted_rays(d);
  std::vector<long long> next;
  for (const auto& r : rays)
    if (angle_less(dir, r.dir)) {
      next = r.dir;
      break;
    }
  if (next.empty()) next = rays.front().dir;
  Rat eps = rat(1, 1000);
  return {rat(lambda[0]) + eps * (rat(next[0]) + rat(1, 97)), rat(lambda[1]) + eps * (rat(next[1]) + rat(1, 89))};
}

LaurentPoly structure_constant_rank2(const ScatteringDiagram2& d, const WeightVec& p1, const WeightVec& p2,
                                     const WeightVec& lambda, const Point2& chi, int order) {
  ContextPtr ctx = rank2_context();
  LaurentPoly r(ctx);
  auto L1 = enumerate_broken_lines_rank2(d, p1, chi, order);
  auto L2 = enumerate_broken_lines_rank2(d, p2, chi, order);
  for (const auto& a : L1)
    for (const auto& b : L2) {
      const auto& fa = a.final_segment();
      const auto& fb = b.final_segment();
      if (fa.exponent + fb.exponent != lambda) continue;
      RootVec y = fa.y + fb.y;
      if (y[0] + y[1] > order) continue;
      r.add_term(exponent_from({0, 0, y[0], y[1]}), fa.coeff * fb.coeff);
    }
  return r;
}

}  // namespace cluster
