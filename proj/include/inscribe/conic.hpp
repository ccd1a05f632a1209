#pragma once

#include <array>
#include <vector>

#include "inscribe/geom.hpp"
#include "inscribe/polygon_solver.hpp"

namespace inscribe {

/// alpha x^2 + beta xy + gamma y^2 + delta x + epsilon y + zeta = 0, unit-norm
/// coefficient vector with the largest-magnitude entry positive.
class Conic {
 public:
  /// Throws InvalidArgument for the zero vector.
  static Conic from_coefficients(const std::array<double, 6>& coef);

  const std::array<double, 6>& coefficients() const { return coef_; }
  double eval(Point2 p) const;
  Point2 gradient(Point2 p) const;
  /// Quadratic part evaluated on a direction.
  double quadratic(Point2 d) const;
  /// |Q(p)| / (1 + |p|^2), scale-aware membership residual.
  double residual(Point2 p) const;
  /// Determinant of the symmetric 3x3 matrix, scaled by its Frobenius norm cubed.
  double normalized_determinant() const;
  bool degenerate(double tol = 1e-10) const { return std::abs(normalized_determinant()) < tol; }

 private:
  explicit Conic(const std::array<double, 6>& coef) : coef_(coef) {}
  std::array<double, 6> coef_;
};

/// Max entrywise difference after both are normalized (sign included).
double conic_distance(const Conic& p, const Conic& q);

/// Throws RankDeficient when the points do not fix a unique conic.
Conic conic_through_5(const std::array<Point2, 5>& points);

/// 0, 1 (tangency) or 2 points, lexicographic order. Throws LineOnConic when the line is a component.
std::vector<Point2> conic_line_intersect(const Conic& c, const Line& l, double tol = 1e-9);

/// Moving chain: B_i on lines[i] and line B_i B_{i+1} through centers[i]. Each
/// sample puts B_0 at s along lines[0] (measured from the foot of the centers'
/// centroid) and records X = line(B_0, centers[0]) meet line(B_{n-1}, centers[n-1]).
struct LocusSample {
  double s = 0.0;
  Point2 x;
};

/// Throws InvalidArgument when samples < 7 and DegenerateChain when fewer than
/// five samples survive.
std::vector<LocusSample> mb_locus(const std::vector<Line>& lines, const std::vector<Point2>& centers,
                                  int samples);

/// Chain built on a polygon: l'_i is side (target + i), and its center is the
/// one the shift assigns to the B-side (target + i, target + i + 1).
struct PolygonChain {
  std::vector<Line> lines;
  std::vector<Point2> centers;
};
PolygonChain polygon_chain(const PolygonInstance& inst, std::size_t target);

std::vector<LocusSample> mb_locus(const PolygonInstance& inst, std::size_t target, int samples);

/// Fits a conic through five well-spread samples. Throws DegenerateChain.
Conic fit_locus_conic(const std::vector<LocusSample>& samples);
double max_residual(const Conic& c, const std::vector<LocusSample>& samples);

/// Candidates for side `target` read off the locus conic; validated like the
/// Moebius path.
std::vector<SolutionPolygon> solve_via_conic(const PolygonInstance& inst, std::size_t target = 0,
                                             int samples = 24);

struct Lemma51Result {
  Conic conic;
  std::vector<Point2> points;
  double max_residual = 0.0;
};

/// E runs over omega along the pencil through F; K = FE meet l, T = PK meet BE.
Lemma51Result lemma51_locus(const Conic& omega, Point2 b, Point2 f, Point2 p, const Line& l, int samples);

struct CollinearityResult {
  bool collinear = false;
  double residual = 0.0;
  std::array<std::array<double, 3>, 3> points{};  // homogeneous, unit norm
};

/// Throws PointsNotOnConic when a vertex misses omega.
CollinearityResult pascal_collinear(const std::array<Point2, 6>& hexagon, const Conic& omega,
                                    double tol = 1e-9);
/// Throws NotPerspective when the joins of corresponding vertices are not concurrent.
CollinearityResult desargues_check(const std::array<Point2, 3>& tri1, const std::array<Point2, 3>& tri2,
                                   double tol = 1e-9);

}  // namespace inscribe
