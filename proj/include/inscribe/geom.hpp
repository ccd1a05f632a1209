#pragma once

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "inscribe/tolerance.hpp"

namespace inscribe {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 p, Point2 q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Point2 operator-(Point2 p, Point2 q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator/(Point2 p, double s) { return {p.x / s, p.y / s}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 p, Point2 q) { return p.x * q.x + p.y * q.y; }
constexpr double cross(Point2 p, Point2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 p, Point2 q) { return norm(p - q); }
constexpr Point2 lerp(Point2 p, Point2 q, double t) { return (1.0 - t) * p + t * q; }
constexpr Point2 midpoint(Point2 p, Point2 q) { return 0.5 * (p + q); }

bool is_finite(Point2 p);

/// Line a*x + b*y + c = 0 with a^2 + b^2 = 1. The sign is canonical: a > 0, or
/// a == 0 and b > 0.
struct Line {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;

  /// Normalizes arbitrary coefficients; throws InvalidArgument for the line at
  /// infinity.
  static Line from_coefficients(double a, double b, double c);

  /// Signed distance of p from the line.
  double eval(Point2 p) const { return a * p.x + b * p.y + c; }
  Point2 normal() const { return {a, b}; }
  Point2 direction() const { return {-b, a}; }
  /// Foot of the perpendicular from the origin.
  Point2 anchor() const { return {-c * a, -c * b}; }
  std::array<double, 3> homogeneous() const { return {a, b, c}; }
};

/// Segment with the affine parameterization t -> (1-t)*start + t*end.
class ParamSegment {
 public:
  ParamSegment(Point2 start, Point2 end, double eps = kDefaultEps);

  Point2 start() const { return start_; }
  Point2 end() const { return end_; }
  Point2 direction() const { return end_ - start_; }
  double length() const { return distance(start_, end_); }
  Point2 at(double t) const { return lerp(start_, end_, t); }
  Line supporting_line() const;

 private:
  Point2 start_;
  Point2 end_;
};

/// Strictly convex polygon with counterclockwise vertex order.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices, double eps = kDefaultEps);

  std::size_t size() const { return vertices_.size(); }
  std::span<const Point2> vertices() const { return vertices_; }
  Point2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  /// Side i runs from vertex i to vertex i+1 (indices mod n).
  ParamSegment side(std::size_t i) const;
  Point2 centroid() const;
  double diameter() const;
  bool contains_strictly(Point2 p, double eps = kDefaultEps) const;

 private:
  std::vector<Point2> vertices_;
};

/// True when the closed vertex chain is strictly convex and counterclockwise.
bool is_strictly_convex_ccw(std::span<const Point2> vertices, double eps = kDefaultEps);

Line line_through(Point2 p, Point2 q, double eps = kDefaultEps);
Point2 intersect_lines(const Line& l1, const Line& l2, double eps = kDefaultEps);

/// Sign of (q-p) x (r-p); zero when the cross product is below eps times the
/// product of the two edge lengths.
int orientation(Point2 p, Point2 q, Point2 r, double eps = kDefaultEps);

/// Parameter of p along the segment's supporting line; t may fall outside [0,1].
double segment_param(Point2 p, const ParamSegment& seg, double eps = kDefaultEps);

/// True when t lies in [eps, 1-eps].
constexpr bool strictly_inside_unit(double t, double eps = kDefaultEps) {
  return t >= eps && t <= 1.0 - eps;
}

Point2 reflect_point(Point2 p, const Line& l);

struct Triangle {
  Point2 a;
  Point2 b;
  Point2 c;
};

struct CevianRatios {
  double lhs = 0.0;  // |BF| / |FE|
  double rhs = 0.0;  // |DH| / |HC|
  Point2 g;          // cevian intersection
  Point2 f;          // transversal on BE
  Point2 h;          // transversal on CD
};

/// Cevians BD (D on AC) and CE (E on AB) meet at G; a transversal through G cuts
/// BE at F and CD at H. Returns both ratios; the geometry guarantees lhs > rhs.
CevianRatios lemma21_ratios(const Triangle& tri, Point2 d_on_ac, Point2 e_on_ab,
                            const Line& transversal, double eps = kDefaultEps);

}  // namespace inscribe
