#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "inscribe/error.hpp"
#include "inscribe/polygon_solver.hpp"
#include "inscribe/random_instances.hpp"
#include "inscribe/regular_examples.hpp"

using namespace inscribe;

namespace {

std::vector<double> finite_roots_in_unit(const ShiftResult& r) {
  std::vector<double> out;
  for (const SolutionPolygon& s : r.candidates) {
    if (std::isfinite(s.params[0]) && s.params[0] > 0.0 && s.params[0] < 1.0) out.push_back(s.params[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double param_gap(const std::vector<double>& p, const std::vector<double>& q) {
  double g = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) g = std::max(g, std::abs(p[i] - q[i]));
  return g;
}

bool contains_params(const std::vector<SolutionPolygon>& sols, const std::vector<double>& want, double tol) {
  return std::any_of(sols.begin(), sols.end(), [&](const SolutionPolygon& s) { return param_gap(s.params, want) < tol; });
}

}  // namespace

TEST_CASE("return map of the regular triangle") {
  const Example1Family fam = make_regular_instance({3, 1.0, {}, 0.0});
  const PolygonInstance inst(fam.outer, fam.inner, 0);
  const FixedPointResult fp = fixed_points(return_map(inst));
  REQUIRE(fp.points.size() == 2);
  std::vector<double> ts;
  for (const ProjParam& p : fp.points) ts.push_back(p.value());
  std::sort(ts.begin(), ts.end());
  CHECK(ts[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ts[1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("seeded polygon parameters are fixed points") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 100; ++it) {
    const SeededInstance s = random_seeded_instance(3 + it % 6, rng);
    const PolygonInstance inst(s.outer, s.inner, s.shift);
    const MoebiusMap m = return_map(inst);
    const ProjParam t0 = ProjParam::finite(s.seeded_params[0]);
    CHECK(chordal_distance(m(t0), t0) < 1e-10);
  }
}

TEST_CASE("center on a side line is rejected") {
  const ConvexPolygon a({{0, 0}, {4, 0}, {0, 4}});
  const auto inst = PolygonInstance::unchecked(a, {{2, 0}, {1, 2}, {0.5, 1}}, 0);
  try {
    return_map(inst);
    FAIL("expected CenterOnLine");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CenterOnLine);
  }
  CHECK_THROWS_AS(PolygonInstance(a, {{2, 0}, {1, 2}, {0.5, 1}}, 0), Error);
}

TEST_CASE("solve_shift on the regular pentagon") {
  const Example1Family fam = make_regular_instance({5, 1.0, {}, 0.0});
  const PolygonInstance inst(fam.outer, fam.inner, 0);
  for (int k : {0, 4}) {
    const ShiftResult r = solve_shift(inst.with_shift(k));
    const auto valid = std::count_if(r.candidates.begin(), r.candidates.end(), [](const auto& s) { return s.valid; });
    CHECK(valid == 2);
  }
  for (int k : {1, 2, 3}) {
    const ShiftResult r = solve_shift(inst.with_shift(k));
    CHECK(std::none_of(r.candidates.begin(), r.candidates.end(), [](const auto& s) { return s.valid; }));
  }
}

TEST_CASE("validation reasons") {
  const Example1Family fam = make_regular_instance({4, 1.0, {}, 0.0});
  const PolygonInstance inst(fam.outer, fam.inner, 0);
  const SolutionPolygon out = validate_params(inst, {1.2, 0.25, 0.25, 0.25});
  CHECK_FALSE(out.valid);
  CHECK(std::find(out.reasons.begin(), out.reasons.end(), Violation::OutOfSegment) != out.reasons.end());
  const SolutionPolygon inf = validate_params(inst, {std::numeric_limits<double>::infinity(), 0.25, 0.25, 0.25});
  CHECK(inf.reasons == std::vector<Violation>{Violation::AtInfinity});
  const SolutionPolygon good = validate_params(inst, {0.25, 0.25, 0.25, 0.25});
  CHECK(good.valid);
  CHECK(good.closure_residual < 1e-12);

  // Fixed points outside (0, 1) do occur for random data; they are kept but flagged.
  std::mt19937_64 rng(8);
  int flagged = 0;
  for (int it = 0; it < 200 && flagged == 0; ++it) {
    const SeededInstance s = random_seeded_instance(4, rng);
    const PolygonInstance p(s.outer, s.inner, 0);
    for (int k = 0; k < 4; ++k) {
      for (const SolutionPolygon& c : solve_shift(p.with_shift(k)).candidates) {
        const bool outside = std::any_of(c.params.begin(), c.params.end(),
                                         [](double t) { return std::isfinite(t) && (t < 0.0 || t > 1.0); });
        if (outside) {
          CHECK_FALSE(c.valid);
          CHECK(std::find(c.reasons.begin(), c.reasons.end(), Violation::OutOfSegment) != c.reasons.end());
          ++flagged;
        }
      }
    }
  }
  CHECK(flagged > 0);
}

TEST_CASE("solve_all reproduces the four regular polygons") {
  for (int n = 3; n <= 12; ++n) {
    const Example1Family fam = make_regular_instance({n, 1.0, {}, 0.0});
    const SolutionSet set = solve_all(fam.outer, fam.inner);
    CHECK(set.solutions.size() == 4);
    CHECK(set.per_shift_counts.at(0) == 2);
    CHECK(set.per_shift_counts.at(n - 1) == 2);
    for (int k = 1; k < n - 1; ++k) CHECK(set.per_shift_counts.at(k) == 0);
    for (const ExpectedPolygon& p : fam.polygons) CHECK(contains_params(set.solutions, p.params, 1e-8));
    const TheoremReport rep = theorem_check(fam.outer, fam.inner);
    CHECK(rep.count == 4);
    CHECK(rep.bound_satisfied);
    CHECK_FALSE(rep.identity_detected);
  }
}

TEST_CASE("medial triangle is recovered") {
  const ConvexPolygon a({{0, 0}, {5, 1}, {1, 4}});
  std::vector<Point2> b, c;
  for (int i = 0; i < 3; ++i) b.push_back(a.side(i).at(0.5));
  for (int i = 0; i < 3; ++i) c.push_back(midpoint(b[i], b[(i + 1) % 3]));
  const SolutionSet set = solve_all(a, c);
  CHECK(set.solutions.size() >= 1);
  CHECK(contains_params(set.solutions, {0.5, 0.5, 0.5}, 1e-10));
}

TEST_CASE("tiny inner polygon near the centroid") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 20; ++it) {
    const ConvexPolygon a = random_convex_polygon(5, rng);
    std::vector<Point2> c;
    for (int i = 0; i < 5; ++i) {
      const double th = 2.0 * std::numbers::pi * i / 5 + 0.3 * it;
      c.push_back(a.centroid() + 1e-3 * Point2{std::cos(th), std::sin(th)});
    }
    SolutionSet set;
    CHECK_NOTHROW(set = solve_all(a, c));
    CHECK(set.solutions.size() <= 4);
  }
}

TEST_CASE("identity flag reaches the report") {
  SolutionSet set;
  set.identity_flags = {{0, false}, {1, true}, {2, false}};
  set.per_shift_counts = {{0, 0}, {1, 0}, {2, 0}};
  const TheoremReport rep = summarize(set);
  CHECK(rep.identity_detected);
  CHECK(rep.count == 0);
}

TEST_CASE("seeded campaign, closure and bounds") {
  std::mt19937_64 rng(1234);
  for (int it = 0; it < 200; ++it) {
    const SeededInstance s = random_seeded_instance(3 + it % 6, rng);
    const SolutionSet set = solve_all(s.outer, s.inner);
    CHECK(set.solutions.size() <= 4);
    for (const auto& [k, cnt] : set.per_shift_counts) CHECK(cnt <= 2);
    CHECK(contains_params(set.solutions, s.seeded_params, 1e-8));
    for (const SolutionPolygon& sol : set.solutions) CHECK(sol.closure_residual < 1e-9);
  }
}

TEST_CASE("similarity transforms leave the parameters alone") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 50; ++it) {
    const SeededInstance s = random_seeded_instance(3 + it % 5, rng);
    const double th = 0.1 + it, sc = 0.3 + 0.1 * it;
    const Point2 tr{3.0 - it, 0.5 * it};
    auto map = [&](Point2 p) {
      return tr + sc * Point2{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y};
    };
    std::vector<Point2> av, cv;
    for (const Point2& p : s.outer.vertices()) av.push_back(map(p));
    for (const Point2& p : s.inner) cv.push_back(map(p));
    const SolutionSet before = solve_all(s.outer, s.inner);
    const SolutionSet after = solve_all(ConvexPolygon(av), cv);
    REQUIRE(before.solutions.size() == after.solutions.size());
    for (const SolutionPolygon& sol : before.solutions) CHECK(contains_params(after.solutions, sol.params, 1e-9));
  }
}

TEST_CASE("brute force scan") {
  const Example1Family fam = make_regular_instance({3, 1.0, {}, 0.0});
  const PolygonInstance inst(fam.outer, fam.inner, 0);
  const std::vector<double> roots = brute_force_scan(inst, 10000);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - 0.25) < 1e-8);
  CHECK(std::abs(roots[1] - 0.4) < 1e-8);
  CHECK_THROWS_AS(brute_force_scan(inst, 99), Error);

  // Shift 1 of the regular triangle has no fixed point inside (0, 1).
  const PolygonInstance none = inst.with_shift(1);
  CHECK(finite_roots_in_unit(solve_shift(none)).empty());
  CHECK(brute_force_scan(none, 10000).empty());

  // At the self-conjugate split the two solutions merge into a double root.
  const double a = 1.0, x = a / (1.0 + std::cos(std::numbers::pi / 3));
  const double h = f_height(3, a, x);
  std::vector<Point2> c;
  for (int i = 0; i < 3; ++i) {
    const Point2 e = midpoint(fam.outer.vertex(i), fam.outer.vertex(i + 1));
    c.push_back(e + h * (Point2{} - e) / norm(e));
  }
  const PolygonInstance tangent(fam.outer, c, 0);
  const ShiftResult tr = solve_shift(tangent);
  REQUIRE(tr.candidates.size() == 1);
  CHECK(std::abs(tr.candidates[0].params[0] - x / 2.0) < 1e-7);
  const std::vector<double> touch = brute_force_scan(tangent, 10000);
  REQUIRE(touch.size() == 1);
  CHECK(std::abs(touch[0] - x / 2.0) < 1e-6);

  // Just below the tangent height the two roots sit inside one grid cell.
  for (double shrink : {1e-6, 1e-8, 1e-9}) {
    std::vector<Point2> near;
    for (int i = 0; i < 3; ++i) {
      const Point2 e = midpoint(fam.outer.vertex(i), fam.outer.vertex(i + 1));
      near.push_back(e + (1.0 - shrink) * h * (Point2{} - e) / norm(e));
    }
    const PolygonInstance split(fam.outer, near, 0);
    const std::vector<double> want = finite_roots_in_unit(solve_shift(split));
    REQUIRE(want.size() == 2);
    const std::vector<double> got = brute_force_scan(split, 10000);
    REQUIRE(got.size() == 2);
    CHECK(std::abs(got[0] - want[0]) < 1e-6);
    CHECK(std::abs(got[1] - want[1]) < 1e-6);
    if (shrink == 1e-8) CHECK(want[1] - want[0] < 1e-4);
  }
}

TEST_CASE("brute force agrees with the Moebius fixed points") {
  std::mt19937_64 rng(555);
  for (int it = 0; it < 40; ++it) {
    const SeededInstance s = random_seeded_instance(3 + it % 5, rng);
    const PolygonInstance base(s.outer, s.inner, 0);
    for (std::size_t k = 0; k < base.size(); ++k) {
      const PolygonInstance inst = base.with_shift(static_cast<int>(k));
      const std::vector<double> want = finite_roots_in_unit(solve_shift(inst));
      const std::vector<double> got = brute_force_scan(inst, 10000);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-7);
    }
  }
}

TEST_CASE("generalized enumeration") {
  SUBCASE("random triangles stay within 12") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
      const GeneralizedConfig cfg = random_generalized_config(3, rng);
      const GeneralizedResult r = enumerate_generalized(cfg.lines, cfg.points);
      CHECK(r.bound == 12);
      CHECK(r.chains == 12);
      CHECK(r.count <= 12);
    }
  }
  SUBCASE("n = 4 bound") {
    std::mt19937_64 rng(32);
    const GeneralizedConfig cfg = random_generalized_config(4, rng);
    const GeneralizedResult r = enumerate_generalized(cfg.lines, cfg.points);
    CHECK(r.bound == 144);
    CHECK(r.count <= 144);
  }
  SUBCASE("every generalized solution closes") {
    std::mt19937_64 rng(33);
    const GeneralizedConfig cfg = random_generalized_config(3, rng);
    const GeneralizedResult r = enumerate_generalized(cfg.lines, cfg.points);
    for (const auto& poly : r.solutions) {
      for (const Point2& p : poly) {
        const bool on_some_line = std::any_of(cfg.lines.begin(), cfg.lines.end(),
                                              [&](const Line& l) { return std::abs(l.eval(p)) < 1e-8 * (1 + norm(p)); });
        CHECK(on_some_line);
      }
    }
  }
  SUBCASE("concurrent lines with Desargues points give a one-parameter family") {
    // Two triangles inscribed in three concurrent lines are perspective from the
    // common point, so their side intersections are collinear and the return map
    // fixes three points.
    const std::vector<Point2> dirs{{1, 0}, {-0.5, 1}, {-0.4, -1}};
    std::vector<Line> lines;
    std::vector<Point2> p, q;
    const double sp[] = {1.0, 1.3, 0.8}, sq[] = {2.1, 0.6, 1.7};
    for (int i = 0; i < 3; ++i) {
      lines.push_back(line_through({0, 0}, dirs[i]));
      p.push_back(sp[i] * dirs[i]);
      q.push_back(sq[i] * dirs[i]);
    }
    std::vector<Point2> c;
    for (int i = 0; i < 3; ++i) {
      c.push_back(intersect_lines(line_through(p[i], p[(i + 1) % 3]), line_through(q[i], q[(i + 1) % 3])));
    }
    const GeneralizedResult r = enumerate_generalized(lines, c);
    CHECK(r.infinite_family);
  }
  SUBCASE("parallel lines are rejected") {
    const std::vector<Line> lines{Line::from_coefficients(0, 1, 0), Line::from_coefficients(0, 1, -1),
                                  Line::from_coefficients(1, 0, 0)};
    try {
      enumerate_generalized(lines, {{0.2, 0.3}, {0.5, 0.5}, {0.3, 0.8}});
      FAIL("expected ParallelLines");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParallelLines);
    }
  }
}
