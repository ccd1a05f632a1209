#pragma once

#include <array>
#include <vector>

#include "inscribe/geom.hpp"
#include "inscribe/polygon_solver.hpp"

namespace inscribe {

struct RegularGonSpec {
  int n = 3;
  double a = 1.0;  // half the side length
  Point2 center;
  double phase = 0.0;  // extra rotation; 0 keeps side A_0A_1 horizontal at the bottom
};

/// Regular n-gon with the given spec, counterclockwise.
ConvexPolygon make_regular_polygon(const RegularGonSpec& spec);

/// |C_iE_i| when B_i sits at distance x from A_i on a regular n-gon of side 2a.
/// Throws DomainError unless n >= 3 and 0 < x < a.
double f_height(int n, double a, double x);

/// Expected solution polygon from the regular construction.
struct ExpectedPolygon {
  std::vector<Point2> vertices;
  std::vector<double> params;
  int shift = 0;
  double x = 0.0;  // |A_iB_i| before reflection
  bool reflected = false;
};

struct Example1Family {
  ConvexPolygon outer;
  std::vector<Point2> inner;
  std::array<double, 2> x_values{};
  std::array<ExpectedPolygon, 4> polygons;
};

Example1Family make_regular_instance(const RegularGonSpec& spec);

/// Unit-side family with foot distance a = |A_iE_i|.
double example2_f(int n, double a, double x);
/// Conjugate split: f(a, y) = f(a, x). Throws SingularDenominator.
double example2_y(int n, double a, double x);
/// Roots z < t of f(1-a, u) = f(a, x). Throws NoRealRoots or RootsOutOfRange.
std::array<double, 2> example2_zt(int n, double a, double x);
/// Split point with y = x.
double example2_self_conjugate(int n, double a);

/// True iff x + y + z + t - 2 (xy + zt) sin^2(pi/k) = 1 holds for both k = n and
/// k = m. Throws InvalidArgument when n == m or either is below 3.
bool mixed_mn_check(int n, int m, double x, double y, double z, double t, double tol = 1e-12);
/// Residual of the sum equation for one polygon size.
double example2_sum_residual(int n, double x, double y, double z, double t);

/// Points and lengths of the ruler-and-compass construction of the second
/// solution of the regular family, executed on side i = 0 of the canonical polygon.
struct ConstructionTrace {
  int n = 0;
  double a = 0.0;
  bool special_case = false;  // n == 4, where x = 2a/3 directly
  Point2 o, a_i, a_next, a_next2, e_i;
  Point2 c, d, g, f, b;
  double len_ai_c = 0.0;
  double len_ei_c = 0.0;
  double len_ei_d = 0.0;
  double len_ai_d = 0.0;
  double len_anext_d = 0.0;
  double len_anext_g = 0.0;
  double len_anext_f = 0.0;
  double x = 0.0;  // |A_iB_i|
};

ConstructionTrace construct_appendix_a(int n, double a = 1.0);

/// Second root of f(x) = f(x0) for the regular-family height. Throws DomainError
/// unless 0 < x0 < a.
double conjugate_x_construction(int n, double a, double x0);

}  // namespace inscribe
