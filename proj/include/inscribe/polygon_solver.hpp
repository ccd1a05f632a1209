#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "inscribe/geom.hpp"
#include "inscribe/projective.hpp"

namespace inscribe {

/// Outer polygon A, inner points C and shift k: a solution B must put C_i
/// strictly inside B_{k+i} B_{k+i+1} (indices mod n).
class PolygonInstance {
 public:
  /// Throws InvalidInstance when C has the wrong size, is not strictly convex, or
  /// leaves the interior of A.
  PolygonInstance(ConvexPolygon a, std::vector<Point2> c, int shift, double eps = kDefaultEps);
  /// Skips the convexity and containment checks (sizes must still match).
  static PolygonInstance unchecked(ConvexPolygon a, std::vector<Point2> c, int shift);

  const ConvexPolygon& outer() const { return a_; }
  const std::vector<Point2>& inner() const { return c_; }
  std::size_t size() const { return c_.size(); }
  int shift() const { return shift_; }
  /// Center used by the projection from side j to side j+1.
  Point2 center(std::size_t j) const;
  PolygonInstance with_shift(int k) const;

 private:
  struct NoCheck {};
  PolygonInstance(NoCheck, ConvexPolygon a, std::vector<Point2> c, int shift);

  ConvexPolygon a_;
  std::vector<Point2> c_;
  int shift_;
};

enum class Violation { AtInfinity, OutOfSegment, NotConvex, CenterNotBetween };

const char* to_string(Violation v);

struct SolutionPolygon {
  std::vector<double> params;  // t_i on side i; +inf where B_i is at infinity
  int shift = 0;
  bool valid = false;
  std::vector<Violation> reasons;
  double closure_residual = 0.0;

  std::vector<Point2> vertices(const ConvexPolygon& a) const;
};

struct ShiftResult {
  std::vector<SolutionPolygon> candidates;
  bool identity = false;
};

struct SolutionSet {
  std::vector<SolutionPolygon> solutions;
  std::map<int, std::size_t> per_shift_counts;
  std::map<int, bool> identity_flags;
};

struct TheoremReport {
  std::size_t count = 0;
  bool bound_satisfied = true;
  bool identity_detected = false;
  std::size_t max_per_shift = 0;
};

/// Projection of side j onto side j+1 through the shift's center.
MoebiusMap side_projection(const PolygonInstance& inst, std::size_t j, double eps = kDefaultEps);
MoebiusMap return_map(const PolygonInstance& inst, double eps = kDefaultEps);

/// Checks a full parameter vector against the instance; never throws.
SolutionPolygon validate_params(const PolygonInstance& inst, std::vector<double> params,
                                double eps = kDefaultEps);

ShiftResult solve_shift(const PolygonInstance& inst, double eps = kDefaultEps);

/// Scans every shift (in parallel). Valid solutions from different shifts that
/// describe the same polygon are merged using match_tol.
SolutionSet solve_all(const ConvexPolygon& a, const std::vector<Point2>& c,
                      const Tolerances& tol = {});

TheoremReport summarize(const SolutionSet& set);
TheoremReport theorem_check(const ConvexPolygon& a, const std::vector<Point2>& c,
                            const Tolerances& tol = {});

/// Image of t_0 after walking the chain with explicit line intersections; NaN
/// when a ray misses the next line.
double propagate_geometric(const PolygonInstance& inst, double t0, std::vector<double>* trail = nullptr);

/// Independent root finder for g(t) = propagate_geometric(t) - t on a uniform
/// grid over [0, 1]. Throws InvalidArgument when grid_size < 100.
std::vector<double> brute_force_scan(const PolygonInstance& inst, std::size_t grid_size);

struct GeneralizedResult {
  std::size_t count = 0;
  std::size_t bound = 0;  // n! (n-1)!
  bool infinite_family = false;
  std::size_t chains = 0;
  std::size_t degenerate_chains = 0;
  std::vector<std::vector<Point2>> solutions;
};

/// Polygons whose vertices lie on the given lines in some cyclic order and whose
/// sides pass through the points in some assignment, with no convexity or
/// segment constraints. Throws ParallelLines when two lines are parallel.
GeneralizedResult enumerate_generalized(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                        const Tolerances& tol = {});

namespace reference {

SolutionSet solve_all(const ConvexPolygon& a, const std::vector<Point2>& c,
                      const Tolerances& tol = {});
std::vector<double> brute_force_scan(const PolygonInstance& inst, std::size_t grid_size);
GeneralizedResult enumerate_generalized(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                        const Tolerances& tol = {});

}  // namespace reference

}  // namespace inscribe
