#include "inscribe/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inscribe/error.hpp"

namespace inscribe {

ProjParam ProjParam::make(double u, double v) {
  const double len = std::hypot(u, v);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw Error(ErrorCode::InvalidArgument, "projective parameter (0, 0) is undefined");
  }
  u /= len;
  v /= len;
  if (v < 0.0 || (v == 0.0 && u < 0.0)) {
    u = -u;
    v = -v;
  }
  return {u + 0.0, v + 0.0};
}

double ProjParam::value() const {
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return u / v;
}

double chordal_distance(ProjParam p, ProjParam q) { return std::abs(p.u * q.v - p.v * q.u); }

MoebiusMap MoebiusMap::from_entries(double m00, double m01, double m10, double m11, double eps) {
  double big = m00;
  for (double e : {m01, m10, m11}) {
    if (std::abs(e) > std::abs(big)) big = e;
  }
  if (!(std::abs(big) > 0.0) || !std::isfinite(big)) {
    throw Error(ErrorCode::DegenerateMap, "Moebius map with zero or non-finite entries");
  }
  MoebiusMap m(m00 / big, m01 / big, m10 / big, m11 / big);
  if (!(std::abs(m.determinant()) > eps)) {
    throw Error(ErrorCode::DegenerateMap, "Moebius map is singular");
  }
  return m;
}

ProjParam MoebiusMap::operator()(ProjParam p) const {
  return ProjParam::make(m00_ * p.u + m01_ * p.v, m10_ * p.u + m11_ * p.v);
}

MoebiusMap MoebiusMap::inverse() const { return from_entries(m11_, -m01_, -m10_, m00_, 0.0); }

MoebiusMap central_projection(Point2 center, const ParamSegment& src, const ParamSegment& dst,
                              double eps) {
  for (const ParamSegment* seg : {&src, &dst}) {
    const Line l = seg->supporting_line();
    const double scale = std::max({1.0, norm(center), norm(seg->start()), seg->length()});
    if (std::abs(l.eval(center)) <= eps * scale) {
      throw Error(ErrorCode::CenterOnLine, "projection center lies on a supporting line");
    }
  }
  // P(t) = P0 + t V is sent to Q0 + s D where the ray from the center through
  // P(t) meets dst; solving cross(Q0 + s D - Z, U + t V) = 0 for s.
  const Point2 u = src.start() - center;
  const Point2 v = src.direction();
  const Point2 w = dst.start() - center;
  const Point2 d = dst.direction();
  return MoebiusMap::from_entries(-cross(w, v), -cross(w, u), cross(d, v), cross(d, u), 0.0);
}

MoebiusMap compose(const MoebiusMap& o, const MoebiusMap& i) {
  return MoebiusMap::from_entries(o.m00() * i.m00() + o.m01() * i.m10(),
                                  o.m00() * i.m01() + o.m01() * i.m11(),
                                  o.m10() * i.m00() + o.m11() * i.m10(),
                                  o.m10() * i.m01() + o.m11() * i.m11(), 0.0);
}

ProjParam apply(const MoebiusMap& m, ProjParam t) { return m(t); }

FixedPointResult fixed_points(const MoebiusMap& m, double eps) {
  FixedPointResult out;
  if (std::abs(m.m01()) < eps && std::abs(m.m10()) < eps && std::abs(m.m00() - m.m11()) < eps) {
    out.kind = FixedPointKind::Identity;
    return out;
  }

  // a u^2 + b u v + c v^2 = 0 in homogeneous form; a == 0 puts a root at infinity.
  const double a = m.m10();
  const double b = m.m11() - m.m00();
  const double c = -m.m01();
  const double disc = b * b - 4.0 * a * c;
  const double scale = b * b + 4.0 * std::abs(a * c);

  if (std::abs(disc) <= 1e-12 * scale) {
    const ProjParam r1 = std::hypot(-b, 2.0 * a) >= std::hypot(2.0 * c, -b)
                             ? ProjParam::make(-b, 2.0 * a)
                             : ProjParam::make(2.0 * c, -b);
    out.points.push_back(r1);
    return out;
  }
  if (disc < 0.0) return out;

  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  out.points.push_back(ProjParam::make(q, a));
  out.points.push_back(ProjParam::make(c, q));
  return out;
}

double cross_ratio(ProjParam a, ProjParam b, ProjParam c, ProjParam d, double eps) {
  const ProjParam pts[] = {a, b, c, d};
  int distinct = 0;
  for (int i = 0; i < 4; ++i) {
    bool seen = false;
    for (int j = 0; j < i; ++j) seen = seen || chordal_distance(pts[i], pts[j]) <= eps;
    if (!seen) ++distinct;
  }
  if (distinct < 3) {
    throw Error(ErrorCode::TooManyCoincidences, "cross ratio needs three distinct points");
  }
  auto det = [](ProjParam x, ProjParam y) { return x.u * y.v - x.v * y.u; };
  const double den = det(d, c) * det(b, a);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return det(d, a) * det(b, c) / den;
}

}  // namespace inscribe
