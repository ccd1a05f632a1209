#pragma once

namespace inscribe {

inline constexpr double kDefaultEps = 1e-9;

struct Tolerances {
  // Relative tolerance for geometric predicates and strict-interior margins.
  double eps = kDefaultEps;
  // Two solutions are the same polygon when their parameters differ by less than this.
  double match = 1e-6;
  // Shared-edge parameter agreement when stitching faces of a polyhedron.
  double stitch = 1e-7;
};

/// Default tolerances, with eps overridden by INSCRIBE_EPS when it parses as a
/// positive number.
Tolerances tolerances_from_env();

}  // namespace inscribe
