#include "inscribe/random_instances.hpp"

#include <cmath>
#include <numbers>

#include "inscribe/error.hpp"

namespace inscribe {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

ConvexPolygon random_convex_polygon(std::size_t n, std::mt19937_64& rng) {
  const double rot = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double sx = uniform(rng, 0.6, 1.6);
  const double sy = uniform(rng, 0.6, 1.6);
  const double shear = uniform(rng, -0.4, 0.4);
  const Point2 shift{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
  std::vector<Point2> v;
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * std::numbers::pi * (static_cast<double>(i) + uniform(rng, 0.2, 0.8)) / n;
    const Point2 p{std::cos(th), std::sin(th)};
    const Point2 q{sx * p.x + shear * p.y, sy * p.y};
    v.push_back(shift + Point2{std::cos(rot) * q.x - std::sin(rot) * q.y, std::sin(rot) * q.x + std::cos(rot) * q.y});
  }
  return ConvexPolygon(std::move(v));
}

SeededInstance random_seeded_instance(std::size_t n, std::mt19937_64& rng, int shift) {
  ConvexPolygon outer = random_convex_polygon(n, rng);
  std::vector<double> params;
  std::vector<Point2> b;
  for (std::size_t i = 0; i < n; ++i) {
    params.push_back(uniform(rng, 0.1, 0.9));
    b.push_back(outer.side(i).at(params.back()));
  }
  const std::size_t k = static_cast<std::size_t>(((shift % static_cast<int>(n)) + static_cast<int>(n)) % static_cast<int>(n));
  std::vector<Point2> inner;
  for (std::size_t i = 0; i < n; ++i) {
    inner.push_back(lerp(b[(k + i) % n], b[(k + i + 1) % n], uniform(rng, 0.1, 0.9)));
  }
  return {std::move(outer), std::move(inner), std::move(params), static_cast<int>(k)};
}

Lemma21Config random_lemma21_config(std::mt19937_64& rng) {
  for (;;) {
    const ConvexPolygon t = random_convex_polygon(3, rng);
    const Triangle tri{t.vertex(0), t.vertex(1), t.vertex(2)};
    const Point2 d = lerp(tri.a, tri.c, uniform(rng, 0.05, 0.95));
    const Point2 e = lerp(tri.a, tri.b, uniform(rng, 0.05, 0.95));
    const Point2 g = intersect_lines(line_through(tri.b, d), line_through(tri.c, e));
    // Aim the transversal at a point of BE; keep it only if it also cuts CD.
    const Point2 f = lerp(tri.b, e, uniform(rng, 0.02, 0.98));
    if (distance(f, g) < 1e-6) continue;
    const Line l = line_through(g, f);
    try {
      const Point2 h = intersect_lines(l, line_through(tri.c, d));
      const double s = segment_param(h, ParamSegment(tri.c, d), 1e-6);
      if (s > 1e-6 && s < 1.0 - 1e-6) return {tri, d, e, l};
    } catch (const Error&) {
    }
  }
}

namespace {

// The chain locus collapses to a line pair when the pencil map from C_0 to
// C_{n-1} fixes their join. Measures how far the join's image turns away from it.
double chain_turn(const GeneralizedConfig& cfg) {
  const std::size_t n = cfg.lines.size();
  const Point2 c0 = cfg.points.front(), cl = cfg.points.back();
  try {
    const Line join = line_through(c0, cl);
    Point2 b = intersect_lines(join, cfg.lines[0]);
    for (std::size_t j = 0; j + 1 < n; ++j) b = intersect_lines(line_through(b, cfg.points[j]), cfg.lines[j + 1]);
    const Point2 u = b - cl, v = c0 - cl;
    return std::abs(cross(u, v)) / (norm(u) * norm(v));
  } catch (const Error&) {
    return 0.0;
  }
}

bool general_position(const GeneralizedConfig& cfg) {
  for (const Point2& p : cfg.points) {
    for (const Line& l : cfg.lines) {
      if (std::abs(l.eval(p)) < 0.05) return false;
    }
  }
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.points.size(); ++j) {
      if (distance(cfg.points[i], cfg.points[j]) < 0.05) return false;
    }
  }
  return chain_turn(cfg) > 0.05;
}

}  // namespace

GeneralizedConfig random_generalized_config(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    const ConvexPolygon a = random_convex_polygon(n, rng);
    GeneralizedConfig cfg;
    for (std::size_t i = 0; i < n; ++i) cfg.lines.push_back(a.side(i).supporting_line());
    const Point2 c = a.centroid();
    for (std::size_t i = 0; i < n; ++i) {
      cfg.points.push_back(c + Point2{uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6)});
    }
    if (general_position(cfg)) return cfg;
  }
}

}  // namespace inscribe
