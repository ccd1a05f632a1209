#include "inscribe/regular_examples.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "inscribe/error.hpp"

namespace inscribe {

namespace {

constexpr double kPi = std::numbers::pi;

void require_n(int n) {
  if (n < 3) throw Error(ErrorCode::DomainError, "polygon size must be at least 3, got " + std::to_string(n));
}

double sin2(int n) {
  const double s = std::sin(kPi / n);
  return s * s;
}

Point2 unit(Point2 p) { return p / norm(p); }

Point2 foot(Point2 p, Point2 q, Point2 r) {
  const Point2 d = r - q;
  return q + (dot(p - q, d) / dot(d, d)) * d;
}

}  // namespace

ConvexPolygon make_regular_polygon(const RegularGonSpec& spec) {
  require_n(spec.n);
  if (!(spec.a > 0.0)) throw Error(ErrorCode::DomainError, "half-side a must be positive");
  const double r = spec.a / std::sin(kPi / spec.n);
  const double theta0 = -kPi / 2.0 - kPi / spec.n + spec.phase;
  std::vector<Point2> v;
  for (int i = 0; i < spec.n; ++i) {
    const double th = theta0 + 2.0 * kPi * i / spec.n;
    v.push_back(spec.center + r * Point2{std::cos(th), std::sin(th)});
  }
  return ConvexPolygon(std::move(v));
}

double f_height(int n, double a, double x) {
  require_n(n);
  if (!(a > 0.0) || !(x > 0.0) || !(x < a)) {
    throw Error(ErrorCode::DomainError, "f_height requires 0 < x < a");
  }
  return x * (a - x) * std::sin(2.0 * kPi / n) / (2.0 * a - 2.0 * x * sin2(n));
}

Example1Family make_regular_instance(const RegularGonSpec& spec) {
  const int n = spec.n;
  ConvexPolygon outer = make_regular_polygon(spec);
  const double a = spec.a;
  const double c2 = std::cos(kPi / n) * std::cos(kPi / n);
  const std::array<double, 2> xs{a / 2.0, a / (1.0 + c2)};

  // Inner points sit on the apothems O E_i at the common height.
  const double h = f_height(n, a, xs[0]);
  std::vector<Point2> inner;
  for (int i = 0; i < n; ++i) {
    const Point2 e = midpoint(outer.vertex(i), outer.vertex(i + 1));
    inner.push_back(e + h * unit(spec.center - e));
  }

  Example1Family fam{outer, inner, xs, {}};
  for (int j = 0; j < 2; ++j) {
    const double t = xs[j] / (2.0 * a);
    for (int r = 0; r < 2; ++r) {
      ExpectedPolygon& p = fam.polygons[2 * j + r];
      p.x = xs[j];
      p.reflected = r == 1;
      // Mirroring in O E_i sends side i to itself reversed and the incidence
      // C_i in B_i B_{i+1} to C_i in B_{i-1} B_i.
      p.shift = r == 0 ? 0 : n - 1;
      const double tp = r == 0 ? t : 1.0 - t;
      for (int i = 0; i < n; ++i) {
        p.params.push_back(tp);
        p.vertices.push_back(outer.side(i).at(tp));
      }
    }
  }
  return fam;
}

double example2_f(int n, double a, double x) {
  require_n(n);
  return x * (a - x) * std::sin(2.0 * kPi / n) / (1.0 - 2.0 * x * sin2(n));
}

double example2_y(int n, double a, double x) {
  require_n(n);
  const double den = 1.0 - 2.0 * x * sin2(n);
  if (std::abs(den) < kDefaultEps) throw Error(ErrorCode::SingularDenominator, "1 - 2x sin^2(pi/n) vanishes");
  return (a - x) / den;
}

std::array<double, 2> example2_zt(int n, double a, double x) {
  require_n(n);
  if (!(a > 0.0 && a < 1.0) || !(x > 0.0 && x < a)) {
    throw Error(ErrorCode::DomainError, "example2_zt requires 0 < x < a < 1");
  }
  const double s2 = sin2(n);
  const double big_s = std::sin(2.0 * kPi / n);
  const double h = example2_f(n, a, x);
  // S u^2 - (S(1-a) + 2 h s^2) u + h = 0
  const double qa = big_s;
  const double qb = -(big_s * (1.0 - a) + 2.0 * h * s2);
  const double qc = h;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) throw Error(ErrorCode::NoRealRoots, "f(1-a, u) never reaches f(a, x)");
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  double z = q / qa;
  double t = qc / q;
  if (z > t) std::swap(z, t);
  if (!(z > 0.0) || !(t < 1.0 - a)) throw Error(ErrorCode::RootsOutOfRange, "roots leave (0, 1-a)");
  return {z, t};
}

double example2_self_conjugate(int n, double a) {
  require_n(n);
  const double s2 = sin2(n);
  const double disc = 1.0 - 2.0 * a * s2;
  if (disc < 0.0) throw Error(ErrorCode::NoRealRoots, "no self-conjugate split");
  return (1.0 - std::sqrt(disc)) / (2.0 * s2);
}

double example2_sum_residual(int n, double x, double y, double z, double t) {
  return x + y + z + t - 2.0 * (x * y + z * t) * sin2(n) - 1.0;
}

bool mixed_mn_check(int n, int m, double x, double y, double z, double t, double tol) {
  if (n < 3 || m < 3 || n == m) {
    throw Error(ErrorCode::InvalidArgument, "mixed_mn_check needs two distinct sizes >= 3");
  }
  return std::abs(example2_sum_residual(n, x, y, z, t)) <= tol &&
         std::abs(example2_sum_residual(m, x, y, z, t)) <= tol;
}

ConstructionTrace construct_appendix_a(int n, double a) {
  const ConvexPolygon poly = make_regular_polygon({n, a, {}, 0.0});
  ConstructionTrace tr;
  tr.n = n;
  tr.a = a;
  tr.special_case = n == 4;
  tr.o = Point2{};
  tr.a_i = poly.vertex(0);
  tr.a_next = poly.vertex(1);
  tr.a_next2 = poly.vertex(2);
  tr.e_i = midpoint(tr.a_i, tr.a_next);

  // 1. foot of the perpendicular from E_i on O A_i
  tr.c = foot(tr.e_i, tr.o, tr.a_i);
  // 2. foot of the perpendicular from C on A_i A_{i+1}
  tr.d = foot(tr.c, tr.a_i, tr.a_next);
  // 3. circle about A_{i+1} through E_i meets line A_{i+2}A_{i+1} beyond A_{i+1}
  const double r = distance(tr.a_next, tr.e_i);
  tr.g = tr.a_next - r * unit(tr.a_next2 - tr.a_next);
  // 4. parallel to DG through E_i
  const Line par = Line::from_coefficients(-(tr.g - tr.d).y, (tr.g - tr.d).x, 0.0);
  const Line through_e = Line::from_coefficients(par.a, par.b, -(par.a * tr.e_i.x + par.b * tr.e_i.y));
  tr.f = intersect_lines(through_e, line_through(tr.a_next, tr.a_next2));
  // 5. circle about A_i with radius |A_{i+1}F| on segment A_iA_{i+1}
  tr.len_anext_f = distance(tr.a_next, tr.f);
  tr.b = tr.a_i + tr.len_anext_f * unit(tr.a_next - tr.a_i);

  tr.len_ai_c = distance(tr.a_i, tr.c);
  tr.len_ei_c = distance(tr.e_i, tr.c);
  tr.len_ei_d = distance(tr.e_i, tr.d);
  tr.len_ai_d = distance(tr.a_i, tr.d);
  tr.len_anext_d = distance(tr.a_next, tr.d);
  tr.len_anext_g = distance(tr.a_next, tr.g);
  tr.x = distance(tr.a_i, tr.b);
  return tr;
}

double conjugate_x_construction(int n, double a, double x0) {
  const double h = f_height(n, a, x0);
  // S x^2 - (a S + 2 h s^2) x + 2 a h = 0; the product of the roots gives x1.
  return 2.0 * a * h / (std::sin(2.0 * kPi / n) * x0);
}

}  // namespace inscribe
