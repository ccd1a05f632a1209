#include "inscribe/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "inscribe/error.hpp"

namespace inscribe {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 lift(Point2 p) { return {p.x, p.y, 1.0}; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 unit3(const Vec3& v) {
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(len > 0.0)) return v;
  return {v[0] / len, v[1] / len, v[2] / len};
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 bc = cross3(b, c);
  return a[0] * bc[0] + a[1] * bc[1] + a[2] * bc[2];
}

Vec3 join(Point2 p, Point2 q) { return unit3(cross3(lift(p), lift(q))); }

std::optional<Point2> meet(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  try {
    const Point2 x = intersect_lines(line_through(p1, p2, 1e-14), line_through(q1, q2, 1e-14), 1e-14);
    if (is_finite(x)) return x;
  } catch (const Error&) {
  }
  return std::nullopt;
}

Point2 centroid_of(const std::vector<Point2>& pts) {
  Point2 s;
  for (const Point2& p : pts) s = s + p;
  return s / static_cast<double>(pts.size());
}

double spread_of(const std::vector<Point2>& pts, Point2 c) {
  double r = 0.0;
  for (const Point2& p : pts) r = std::max(r, distance(p, c));
  return std::max(r, 1e-300);
}

}  // namespace

Conic Conic::from_coefficients(const std::array<double, 6>& coef) {
  double len = 0.0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    len += coef[i] * coef[i];
    if (std::abs(coef[i]) > std::abs(coef[big])) big = i;
  }
  len = std::sqrt(len);
  if (!(len > 0.0) || !std::isfinite(len)) throw Error(ErrorCode::InvalidArgument, "conic coefficients vanish");
  if (coef[big] < 0.0) len = -len;
  std::array<double, 6> out{};
  for (std::size_t i = 0; i < 6; ++i) out[i] = coef[i] / len + 0.0;
  return Conic(out);
}

double Conic::eval(Point2 p) const {
  const auto& k = coef_;
  return k[0] * p.x * p.x + k[1] * p.x * p.y + k[2] * p.y * p.y + k[3] * p.x + k[4] * p.y + k[5];
}

Point2 Conic::gradient(Point2 p) const {
  const auto& k = coef_;
  return {2.0 * k[0] * p.x + k[1] * p.y + k[3], k[1] * p.x + 2.0 * k[2] * p.y + k[4]};
}

double Conic::quadratic(Point2 d) const {
  return coef_[0] * d.x * d.x + coef_[1] * d.x * d.y + coef_[2] * d.y * d.y;
}

double Conic::residual(Point2 p) const { return std::abs(eval(p)) / (1.0 + dot(p, p)); }

double Conic::normalized_determinant() const {
  const auto& k = coef_;
  const Vec3 r0{k[0], k[1] / 2, k[3] / 2};
  const Vec3 r1{k[1] / 2, k[2], k[4] / 2};
  const Vec3 r2{k[3] / 2, k[4] / 2, k[5]};
  double fro = 0.0;
  for (const Vec3& r : {r0, r1, r2}) fro += r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
  fro = std::sqrt(fro);
  return det3(r0, r1, r2) / (fro * fro * fro);
}

double conic_distance(const Conic& p, const Conic& q) {
  double d = 0.0;
  for (std::size_t i = 0; i < 6; ++i) d = std::max(d, std::abs(p.coefficients()[i] - q.coefficients()[i]));
  return d;
}

Conic conic_through_5(const std::array<Point2, 5>& points) {
  const std::vector<Point2> pts(points.begin(), points.end());
  const Point2 m = centroid_of(pts);
  const double s = spread_of(pts, m);

  // Fit in centred, scaled coordinates.
  std::array<std::array<double, 6>, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) {
    const Point2 p = (pts[i] - m) / s;
    a[i] = {p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0};
  }

  std::array<std::size_t, 6> col{0, 1, 2, 3, 4, 5};
  double first_pivot = 0.0;
  for (std::size_t r = 0; r < 5; ++r) {
    std::size_t pr = r;
    std::size_t pc = r;
    for (std::size_t i = r; i < 5; ++i) {
      for (std::size_t j = r; j < 6; ++j) {
        if (std::abs(a[i][col[j]]) > std::abs(a[pr][col[pc]])) {
          pr = i;
          pc = j;
        }
      }
    }
    std::swap(a[r], a[pr]);
    std::swap(col[r], col[pc]);
    const double piv = a[r][col[r]];
    if (r == 0) first_pivot = std::abs(piv);
    if (!(std::abs(piv) > 1e-8 * first_pivot)) {
      throw Error(ErrorCode::RankDeficient, "points do not determine a unique conic");
    }
    for (std::size_t i = r + 1; i < 5; ++i) {
      const double f = a[i][col[r]] / piv;
      for (std::size_t j = r; j < 6; ++j) a[i][col[j]] -= f * a[r][col[j]];
    }
  }
  std::array<double, 6> x{};
  x[col[5]] = 1.0;
  for (std::size_t r = 5; r-- > 0;) {
    double acc = 0.0;
    for (std::size_t j = r + 1; j < 6; ++j) acc += a[r][col[j]] * x[col[j]];
    x[col[r]] = -acc / a[r][col[r]];
  }

  // Back to world coordinates: substitute (x - m) / s and clear s^2.
  const double A = x[0], B = x[1], C = x[2], D = x[3] * s, E = x[4] * s, F = x[5] * s * s;
  const double cx = m.x, cy = m.y;
  return Conic::from_coefficients({
      A,
      B,
      C,
      -2.0 * A * cx - B * cy + D,
      -B * cx - 2.0 * C * cy + E,
      A * cx * cx + B * cx * cy + C * cy * cy - D * cx - E * cy + F,
  });
}

std::vector<Point2> conic_line_intersect(const Conic& c, const Line& l, double tol) {
  const Point2 p = l.anchor();
  const Point2 d = l.direction();
  const double qa = c.quadratic(d);
  const double qb = dot(c.gradient(p), d);
  const double qc = c.eval(p);
  const double scale = 1.0 + dot(p, p);
  if (std::max({std::abs(qa), std::abs(qb), std::abs(qc)}) <= tol * scale) {
    throw Error(ErrorCode::LineOnConic, "line is a component of the conic");
  }
  if (std::abs(qa) <= tol * scale) {
    if (std::abs(qb) <= tol * scale) return {};
    return {p + (-qc / qb) * d};
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (std::abs(disc) <= tol * (qb * qb + 4.0 * std::abs(qa * qc))) return {p + (-qb / (2.0 * qa)) * d};
  if (disc < 0.0) return {};
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  Point2 x1 = p + (q / qa) * d;
  Point2 x2 = p + (qc / q) * d;
  if (x2.x < x1.x || (x2.x == x1.x && x2.y < x1.y)) std::swap(x1, x2);
  return {x1, x2};
}

std::vector<LocusSample> mb_locus(const std::vector<Line>& lines, const std::vector<Point2>& centers,
                                  int samples) {
  if (samples < 7) throw Error(ErrorCode::InvalidArgument, "locus needs at least 7 samples");
  const std::size_t n = lines.size();
  if (n < 2 || centers.size() != n) throw Error(ErrorCode::InvalidArgument, "chain needs matching lines and centers");

  const Point2 m = centroid_of(centers);
  const double size = std::max(1e-3, spread_of(centers, m));
  const Line& l0 = lines[0];
  const Point2 base = m - l0.eval(m) * l0.normal();

  std::vector<LocusSample> out;
  for (int i = 0; i < samples; ++i) {
    const double s = size * std::tan(std::numbers::pi * ((i + 0.5) / samples - 0.5));
    const Point2 b0 = base + s * l0.direction();
    Point2 b = b0;
    bool ok = true;
    try {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        b = intersect_lines(line_through(b, centers[j], 1e-12), lines[j + 1], 1e-12);
      }
      const Point2 x = intersect_lines(line_through(b0, centers[0], 1e-12),
                                       line_through(b, centers[n - 1], 1e-12), 1e-12);
      ok = is_finite(x) && distance(x, m) < 1e6 * size;
      if (ok) out.push_back({s, x});
    } catch (const Error&) {
      ok = false;
    }
  }
  if (out.size() < 5) throw Error(ErrorCode::DegenerateChain, "fewer than five usable locus samples");
  return out;
}

PolygonChain polygon_chain(const PolygonInstance& inst, std::size_t target) {
  PolygonChain chain;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    chain.lines.push_back(inst.outer().side(target + i).supporting_line());
    chain.centers.push_back(inst.center(target + i));
  }
  return chain;
}

std::vector<LocusSample> mb_locus(const PolygonInstance& inst, std::size_t target, int samples) {
  const PolygonChain chain = polygon_chain(inst, target);
  return mb_locus(chain.lines, chain.centers, samples);
}

Conic fit_locus_conic(const std::vector<LocusSample>& samples) {
  if (samples.size() < 5) throw Error(ErrorCode::DegenerateChain, "fewer than five locus samples");
  // Prefer samples near the bulk of the locus; far ones are poorly conditioned.
  std::vector<double> xs, ys;
  for (const LocusSample& s : samples) {
    xs.push_back(s.x.x);
    ys.push_back(s.x.y);
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  const Point2 med{median(xs), median(ys)};
  std::vector<double> dist;
  for (const LocusSample& s : samples) dist.push_back(distance(s.x, med));
  const double cutoff = 3.0 * std::max(median(dist), 1e-12);
  std::vector<Point2> pool;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (dist[i] <= cutoff) pool.push_back(samples[i].x);
  }
  if (pool.size() < 5) {
    pool.clear();
    for (const LocusSample& s : samples) pool.push_back(s.x);
  }

  // Thin loci can make every pick from the bulk ill-conditioned, so picks from the
  // whole sample set compete too; the fit that best explains all samples wins.
  std::vector<Point2> all;
  for (const LocusSample& s : samples) all.push_back(s.x);
  std::optional<Conic> best;
  double best_res = std::numeric_limits<double>::infinity();
  for (const std::vector<Point2>* src : {&pool, &all}) {
    const std::size_t len = src->size();
    for (std::size_t offset = 0; offset < std::min<std::size_t>(len, 4); ++offset) {
      std::array<Point2, 5> pick;
      for (std::size_t k = 0; k < 5; ++k) pick[k] = (*src)[(offset + k * len / 5) % len];
      try {
        const Conic c = conic_through_5(pick);
        const double r = max_residual(c, samples);
        if (r < best_res) {
          best_res = r;
          best = c;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::RankDeficient) throw;
      }
    }
  }
  if (!best) throw Error(ErrorCode::DegenerateChain, "locus samples do not determine a conic");
  return *best;
}

double max_residual(const Conic& c, const std::vector<LocusSample>& samples) {
  double r = 0.0;
  for (const LocusSample& s : samples) r = std::max(r, c.residual(s.x));
  return r;
}

std::vector<SolutionPolygon> solve_via_conic(const PolygonInstance& inst, std::size_t target, int samples) {
  const std::size_t n = inst.size();
  const ConvexPolygon& a = inst.outer();
  const Conic conic = fit_locus_conic(mb_locus(inst, target, samples));
  const ParamSegment start_side = a.side(target);
  auto param_on = [](const ParamSegment& seg, Point2 p) {
    return dot(p - seg.start(), seg.direction()) / dot(seg.direction(), seg.direction());
  };

  // Walks the chain from side `target`; NaN when a ray misses a line.
  std::vector<double> params(n);
  auto walk = [&](double t_start) {
    params[target % n] = t_start;
    Point2 b = start_side.at(t_start);
    double t = t_start;
    for (std::size_t i = 0; i < n; ++i) {
      const ParamSegment next = a.side(target + i + 1);
      try {
        b = intersect_lines(line_through(b, inst.center(target + i), 1e-14), next.supporting_line(), 1e-14);
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
      t = param_on(next, b);
      if (i + 1 < n) params[(target + i + 1) % n] = t;
    }
    return t;
  };

  std::vector<SolutionPolygon> out;
  for (const Point2& x : conic_line_intersect(conic, start_side.supporting_line())) {
    // Thin loci give intersection points good to a few digits only; Newton on the
    // walk's closure gap restores full precision.
    double t = param_on(start_side, x);
    double g = walk(t) - t;
    for (int it = 0; it < 30 && std::isfinite(g) && g != 0.0; ++it) {
      const double h = 1e-7 * std::max(1.0, std::abs(t));
      const double slope = (walk(t + h) - walk(t - h)) / (2.0 * h) - 1.0;
      if (!std::isfinite(slope) || slope == 0.0) break;
      const double t_next = t - g / slope;
      const double g_next = walk(t_next) - t_next;
      if (!(std::abs(g_next) < std::abs(g))) break;
      t = t_next;
      g = g_next;
    }
    // Points where the locus meets the line without closing the chain are spurious.
    if (!(std::abs(g) < 1e-6 * std::max(1.0, std::abs(t)))) continue;
    walk(t);
    bool dup = false;
    for (const SolutionPolygon& s : out) dup = dup || std::abs(s.params[target % n] - t) < 1e-9;
    if (!dup) out.push_back(validate_params(inst, params));
  }
  return out;
}

Lemma51Result lemma51_locus(const Conic& omega, Point2 b, Point2 f, Point2 p, const Line& l, int samples) {
  if (samples < 7) throw Error(ErrorCode::InvalidArgument, "locus needs at least 7 samples");
  if (omega.residual(b) > 1e-8 || omega.residual(f) > 1e-8) {
    throw Error(ErrorCode::PointsNotOnConic, "B and F must lie on omega");
  }
  const double size = std::max({1e-3, distance(b, f), distance(p, f)});
  std::vector<LocusSample> pts;
  const Point2 grad_f = omega.gradient(f);
  for (int i = 0; i < samples; ++i) {
    const double th = std::numbers::pi * (i + 0.5) / samples;
    const Point2 d{std::cos(th), std::sin(th)};
    const double q = omega.quadratic(d);
    if (std::abs(q) < 1e-12) continue;
    const Point2 e = f + (-dot(grad_f, d) / q) * d;
    if (!is_finite(e) || distance(e, b) < 1e-6 * size || distance(e, f) < 1e-6 * size) continue;
    try {
      const Point2 k = intersect_lines(line_through(f, e, 1e-14), l, 1e-12);
      const auto t = meet(p, k, b, e);
      if (t && distance(*t, f) < 1e6 * size) pts.push_back({th, *t});
    } catch (const Error&) {
    }
  }
  if (pts.size() < 5) throw Error(ErrorCode::DegenerateChain, "fewer than five usable lemma samples");
  Lemma51Result res{fit_locus_conic(pts), {}, 0.0};
  for (const LocusSample& s : pts) res.points.push_back(s.x);
  res.max_residual = max_residual(res.conic, pts);
  return res;
}

CollinearityResult pascal_collinear(const std::array<Point2, 6>& h, const Conic& omega, double tol) {
  for (const Point2& p : h) {
    if (omega.residual(p) > 1e-8) throw Error(ErrorCode::PointsNotOnConic, "hexagon vertex is off the conic");
  }
  CollinearityResult r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3 s1 = join(h[i], h[i + 1]);
    const Vec3 s2 = join(h[i + 3], h[(i + 4) % 6]);
    r.points[i] = unit3(cross3(s1, s2));
  }
  r.residual = std::abs(det3(r.points[0], r.points[1], r.points[2]));
  r.collinear = r.residual < tol;
  return r;
}

CollinearityResult desargues_check(const std::array<Point2, 3>& t1, const std::array<Point2, 3>& t2, double tol) {
  const Vec3 j0 = join(t1[0], t2[0]);
  const Vec3 j1 = join(t1[1], t2[1]);
  const Vec3 j2 = join(t1[2], t2[2]);
  if (std::abs(det3(j0, j1, j2)) > 1e-8) {
    throw Error(ErrorCode::NotPerspective, "triangles are not perspective from a point");
  }
  CollinearityResult r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3 s1 = join(t1[i], t1[(i + 1) % 3]);
    const Vec3 s2 = join(t2[i], t2[(i + 1) % 3]);
    r.points[i] = unit3(cross3(s1, s2));
  }
  r.residual = std::abs(det3(r.points[0], r.points[1], r.points[2]));
  r.collinear = r.residual < tol;
  return r;
}

}  // namespace inscribe
