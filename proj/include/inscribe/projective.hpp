#pragma once

#include <vector>

#include "inscribe/geom.hpp"

namespace inscribe {

/// Homogeneous line parameter t = u/v, kept on the unit circle with a canonical
/// sign (v > 0, or v == 0 and u > 0). v == 0 is the point at infinity.
struct ProjParam {
  double u = 0.0;
  double v = 1.0;

  static ProjParam make(double u, double v);
  static ProjParam finite(double t) { return make(t, 1.0); }
  static ProjParam infinity() { return {1.0, 0.0}; }

  bool is_infinite(double eps = kDefaultEps) const { return std::abs(v) <= eps * std::abs(u); }
  /// u/v; +inf for the point at infinity.
  double value() const;
};

/// |u1 v2 - u2 v1|: sine of the angle between the two representatives.
double chordal_distance(ProjParam p, ProjParam q);

/// t -> (m00 t + m01) / (m10 t + m11), scaled so the largest-magnitude entry is 1.
class MoebiusMap {
 public:
  /// Throws DegenerateMap when the normalized determinant is below eps.
  static MoebiusMap from_entries(double m00, double m01, double m10, double m11,
                                 double eps = kDefaultEps);
  static MoebiusMap identity() { return MoebiusMap(1.0, 0.0, 0.0, 1.0); }

  double m00() const { return m00_; }
  double m01() const { return m01_; }
  double m10() const { return m10_; }
  double m11() const { return m11_; }
  double determinant() const { return m00_ * m11_ - m01_ * m10_; }

  ProjParam operator()(ProjParam p) const;
  ProjParam operator()(double t) const { return (*this)(ProjParam::finite(t)); }
  MoebiusMap inverse() const;

 private:
  MoebiusMap(double m00, double m01, double m10, double m11)
      : m00_(m00), m01_(m01), m10_(m10), m11_(m11) {}

  double m00_, m01_, m10_, m11_;
};

/// Perspectivity from src's supporting line to dst's, in the segments' own
/// parameters. Throws CenterOnLine when the center is on either line.
MoebiusMap central_projection(Point2 center, const ParamSegment& src, const ParamSegment& dst,
                              double eps = kDefaultEps);

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);
ProjParam apply(const MoebiusMap& m, ProjParam t);

enum class FixedPointKind { Identity, Finite };

struct FixedPointResult {
  FixedPointKind kind = FixedPointKind::Finite;
  // Empty for Identity; a double root is listed once.
  std::vector<ProjParam> points;
};

FixedPointResult fixed_points(const MoebiusMap& m, double eps = kDefaultEps);

/// Cross ratio normalized so that (0, 1, inf, t) -> t. A vanishing denominator
/// yields +inf. Throws TooManyCoincidences with fewer than three distinct inputs.
double cross_ratio(ProjParam a, ProjParam b, ProjParam c, ProjParam d, double eps = kDefaultEps);

}  // namespace inscribe
