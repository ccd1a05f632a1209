#include "inscribe/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "inscribe/error.hpp"

namespace inscribe {

namespace {

double scale_of(Point2 p, Point2 q) {
  return std::max({1.0, norm(p), norm(q)});
}

}  // namespace

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Line Line::from_coefficients(double a, double b, double c) {
  const double len = std::hypot(a, b);
  if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidArgument, "line coefficients describe no finite line");
  }
  a /= len;
  b /= len;
  c /= len;
  if (a < 0.0 || (a == 0.0 && b < 0.0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  // Avoid negative zero so that the axis lines compare bitwise-equal.
  return Line{a + 0.0, b + 0.0, c + 0.0};
}

Line line_through(Point2 p, Point2 q, double eps) {
  if (distance(p, q) < eps * scale_of(p, q)) {
    throw Error(ErrorCode::CoincidentPoints, "line_through: points coincide");
  }
  return Line::from_coefficients(p.y - q.y, q.x - p.x, cross(p, q));
}

Point2 intersect_lines(const Line& l1, const Line& l2, double eps) {
  const double det = l1.a * l2.b - l2.a * l1.b;
  if (std::abs(det) < eps) {
    throw Error(ErrorCode::ParallelLines, "intersect_lines: lines are parallel");
  }
  return {(l1.b * l2.c - l2.b * l1.c) / det, (l1.c * l2.a - l2.c * l1.a) / det};
}

int orientation(Point2 p, Point2 q, Point2 r, double eps) {
  const Point2 u = q - p;
  const Point2 v = r - p;
  const double cr = cross(u, v);
  const double scale = norm(u) * norm(v);
  if (std::abs(cr) <= eps * scale) return 0;
  return cr > 0.0 ? 1 : -1;
}

ParamSegment::ParamSegment(Point2 start, Point2 end, double eps) : start_(start), end_(end) {
  if (!is_finite(start) || !is_finite(end)) {
    throw Error(ErrorCode::InvalidArgument, "segment endpoints must be finite");
  }
  if (distance(start, end) < eps * scale_of(start, end)) {
    throw Error(ErrorCode::CoincidentPoints, "segment endpoints coincide");
  }
}

Line ParamSegment::supporting_line() const { return line_through(start_, end_, 0.0); }

double segment_param(Point2 p, const ParamSegment& seg, double eps) {
  const Point2 d = seg.direction();
  const double len2 = dot(d, d);
  const double len = std::sqrt(len2);
  const Point2 rel = p - seg.start();
  const double off = std::abs(cross(d, rel)) / len;
  if (off > eps * std::max({1.0, len, norm(rel)})) {
    throw Error(ErrorCode::OffLine, "segment_param: point is off the segment's line");
  }
  return dot(rel, d) / len2;
}

Point2 reflect_point(Point2 p, const Line& l) {
  const double s = l.eval(p);
  return p - 2.0 * s * l.normal();
}

bool is_strictly_convex_ccw(std::span<const Point2> v, double eps) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = v[i];
    const Point2 q = v[(i + 1) % n];
    const Point2 r = v[(i + 2) % n];
    if (!is_finite(p)) return false;
    if (distance(p, q) < eps * scale_of(p, q)) return false;
    if (orientation(p, q, r, eps) != 1) return false;
    turning += std::atan2(cross(q - p, r - q), dot(q - p, r - q));
  }
  // All left turns with total turning 2*pi rules out star polygons.
  return std::abs(turning - 2.0 * std::numbers::pi) < 1e-6;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices, double eps)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "polygon requires n >= 3");
  }
  if (!is_strictly_convex_ccw(vertices_, eps)) {
    throw Error(ErrorCode::NotConvex, "polygon is not strictly convex and counterclockwise");
  }
}

ParamSegment ConvexPolygon::side(std::size_t i) const {
  return ParamSegment(vertex(i), vertex(i + 1), 0.0);
}

Point2 ConvexPolygon::centroid() const {
  Point2 sum;
  for (const Point2& p : vertices_) sum = sum + p;
  return sum / static_cast<double>(vertices_.size());
}

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      d = std::max(d, distance(vertices_[i], vertices_[j]));
    }
  }
  return d;
}

bool ConvexPolygon::contains_strictly(Point2 p, double eps) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (orientation(vertex(i), vertex(i + 1), p, eps) != 1) return false;
  }
  return true;
}

CevianRatios lemma21_ratios(const Triangle& tri, Point2 d_on_ac, Point2 e_on_ab,
                            const Line& transversal, double eps) {
  const ParamSegment ac(tri.a, tri.c);
  const ParamSegment ab(tri.a, tri.b);
  if (!strictly_inside_unit(segment_param(d_on_ac, ac, eps), eps) ||
      !strictly_inside_unit(segment_param(e_on_ab, ab, eps), eps)) {
    throw Error(ErrorCode::InvalidArgument, "D and E must be strictly inside AC and AB");
  }

  CevianRatios out;
  try {
    out.g = intersect_lines(line_through(tri.b, d_on_ac), line_through(tri.c, e_on_ab), eps);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParallelLines) throw;
    throw Error(ErrorCode::DegenerateCevians, "cevians BD and CE are parallel");
  }
  if (std::abs(transversal.eval(out.g)) > eps * std::max(1.0, norm(out.g))) {
    throw Error(ErrorCode::InvalidArgument, "transversal must pass through the cevian intersection");
  }

  // The transversal has to cut both open segments BE and CD.
  auto cut = [&](Point2 from, Point2 to, const char* which) {
    const ParamSegment seg(from, to);
    Point2 x;
    try {
      x = intersect_lines(transversal, seg.supporting_line(), eps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParallelLines) throw;
      throw Error(ErrorCode::TransversalMiss, std::string("transversal parallel to ") + which);
    }
    if (!strictly_inside_unit(segment_param(x, seg, 1e-6), eps)) {
      throw Error(ErrorCode::TransversalMiss, std::string("transversal misses open segment ") + which);
    }
    return x;
  };
  out.f = cut(tri.b, e_on_ab, "BE");
  out.h = cut(tri.c, d_on_ac, "CD");

  out.lhs = distance(tri.b, out.f) / distance(out.f, e_on_ab);
  out.rhs = distance(d_on_ac, out.h) / distance(out.h, tri.c);
  return out;
}

}  // namespace inscribe
