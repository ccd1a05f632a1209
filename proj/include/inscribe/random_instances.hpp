#pragma once

#include <random>
#include <vector>

#include "inscribe/geom.hpp"

namespace inscribe {

/// Jittered points on the unit circle pushed through a random orientation-
/// preserving affine map.
ConvexPolygon random_convex_polygon(std::size_t n, std::mt19937_64& rng);

/// Instance with a known solution: B is drawn on A's sides, then C_i is drawn on
/// B_{k+i} B_{k+i+1}.
struct SeededInstance {
  ConvexPolygon outer;
  std::vector<Point2> inner;
  std::vector<double> seeded_params;
  int shift = 0;
};

SeededInstance random_seeded_instance(std::size_t n, std::mt19937_64& rng, int shift = 0);

struct Lemma21Config {
  Triangle tri;
  Point2 d;
  Point2 e;
  Line transversal;
};

/// Random triangle, D and E inside AC and AB, and a transversal through the
/// cevian intersection that cuts both open segments BE and CD.
Lemma21Config random_lemma21_config(std::mt19937_64& rng);

struct GeneralizedConfig {
  std::vector<Line> lines;
  std::vector<Point2> points;
};

/// Lines through the sides of a random triangle-like polygon and random points
/// near its centroid, redrawn until no point hugs a line and the chain locus
/// stays clear of a line pair.
GeneralizedConfig random_generalized_config(std::size_t n, std::mt19937_64& rng);

}  // namespace inscribe
