#pragma once

#include <array>
#include <string>
#include <vector>

#include "cluster/linalg.hpp"
#include "cluster/matrix.hpp"
#include "cluster/poly.hpp"
#include "cluster/seeds.hpp"

namespace cluster {

// Truncated power series in yhat_1, yhat_2 (total degree <= order).
class Series2 {
 public:
  Series2() = default;
  explicit Series2(int order);
  static Series2 one(int order);
  int order() const { return order_; }
  const Int& at(int a, int b) const { return c_[a][b]; }
  Int& at(int a, int b) { return c_[a][b]; }
  Series2 operator*(const Series2& o) const;
  Series2 inverse() const;  // needs constant term 1
  Series2 pow(long long e) const;
  bool is_one() const;

 private:
  int order_ = 0;
  std::vector<std::vector<Int>> c_;
};

struct Wall2 {
  RootVec normal;                  // primitive, nonnegative
  std::vector<long long> dir;      // direction of the ray (or of one half of the line)
  bool full_line = false;
  std::vector<Int> f;              // f(t) = sum f[j] t^j with t = yhat^normal, f[0] = 1
  std::string to_string() const;
};

struct ScatteringDiagram2 {
  IntMatrix B;
  std::vector<long long> s;
  int order = 0;
  std::vector<Wall2> walls;
  bool consistent = false;
};

using Point2 = std::array<Rat, 2>;

// Walls for principal coefficients, consistent modulo (yhat)^{order+1}.
ScatteringDiagram2 complete_scattering_rank2(const IntMatrix& B, int order);
// Path-ordered product around the origin applied to x_1, x_2; identity iff consistent to the order.
std::array<Series2, 2> loop_product(const ScatteringDiagram2& d);

struct BrokenLine2 {
  struct Segment {
    WeightVec exponent;
    RootVec y;
    Int coeff;
  };
  std::vector<Segment> segments;  // from the unbounded segment to the final one
  std::vector<Point2> bends;
  const Segment& final_segment() const { return segments.back(); }
};

Point2 default_endpoint();
std::vector<BrokenLine2> enumerate_broken_lines_rank2(const ScatteringDiagram2& d, const WeightVec& lambda,
                                                      const Point2& chi, int order);
LaurentPoly theta_via_broken_lines(const ScatteringDiagram2& d, const WeightVec& lambda, int order,
                                   const Point2& chi = default_endpoint());
// Endpoint in a chamber adjacent to lambda (lambda itself may lie on a wall).
Point2 endpoint_near(const ScatteringDiagram2& d, const WeightVec& lambda);
// a_chi(p1, p2, lambda) truncated at total y-degree `order`, as a polynomial in y.
LaurentPoly structure_constant_rank2(const ScatteringDiagram2& d, const WeightVec& p1, const WeightVec& p2,
                                     const WeightVec& lambda, const Point2& chi, int order);

ContextPtr rank2_context();
// Drop terms whose y-degree exceeds order.
LaurentPoly truncate_y(const LaurentPoly& p, int order);

}  // namespace cluster
