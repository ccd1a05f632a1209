// One line per acceptance criterion. Tolerances are fixed here on purpose; a
// red line means the check as stated does not hold for this implementation.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "inscribe/conic.hpp"
#include "inscribe/error.hpp"
#include "inscribe/polygon_solver.hpp"
#include "inscribe/polyhedron.hpp"
#include "inscribe/random_instances.hpp"
#include "inscribe/regular_examples.hpp"

using namespace inscribe;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double gap(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) return INFINITY;
  double g = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) g = std::max(g, std::abs(p[i] - q[i]));
  return g;
}

std::vector<double> roots_in_unit(const ShiftResult& r) {
  std::vector<double> out;
  for (const SolutionPolygon& s : r.candidates) {
    if (std::isfinite(s.params[0]) && s.params[0] > 0.0 && s.params[0] < 1.0) out.push_back(s.params[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome example1_identity() {
  constexpr double kTol = 1e-12;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.5}) {
    for (int n = 3; n <= 24; ++n) {
      const double c = std::cos(std::numbers::pi / n);
      const double quoted = a * std::sin(2.0 * std::numbers::pi / n) / (4.0 * (1.0 + c * c));
      const double f1 = f_height(n, a, a / 2.0);
      const double f2 = f_height(n, a, a / (1.0 + c * c));
      worst = std::max({worst, std::abs(f1 - f2) / a, std::abs(f1 - quoted) / a, std::abs(f2 - quoted) / a});
    }
  }
  return {worst < kTol, fmt("n=3..24, a in {0.5,1,2.5}: max gap %.2e a (tol %.0e a)", worst, kTol)};
}

Outcome four_polygons() {
  constexpr double kTol = 1e-8;
  bool ok = true;
  double worst = 0.0;
  for (int n = 3; n <= 12; ++n) {
    const Example1Family fam = make_regular_instance({n, 1.0, {}, 0.0});
    const SolutionSet set = solve_all(fam.outer, fam.inner);
    ok = ok && set.solutions.size() == 4 && set.per_shift_counts.at(0) == 2 && set.per_shift_counts.at(n - 1) == 2;
    for (const ExpectedPolygon& e : fam.polygons) {
      double best = INFINITY;
      for (const SolutionPolygon& s : set.solutions) best = std::min(best, gap(s.params, e.params));
      worst = std::max(worst, best);
    }
  }
  ok = ok && worst < kTol;
  return {ok, fmt("n=3..12: 4 valid, 2+2 on shifts 0 and n-1, max param gap %.2e (tol %.0e)", worst, kTol)};
}

Outcome bound_campaign() {
  constexpr double kTol = 1e-7;
  std::mt19937_64 rng(20240601);
  std::size_t over = 0, missed = 0, most = 0;
  for (int it = 0; it < 1000; ++it) {
    const SeededInstance s = random_seeded_instance(3 + it % 6, rng);
    const SolutionSet set = solve_all(s.outer, s.inner);
    most = std::max(most, set.solutions.size());
    if (set.solutions.size() > 4) ++over;
    const bool found = std::any_of(set.solutions.begin(), set.solutions.end(),
                                   [&](const SolutionPolygon& p) { return gap(p.params, s.seeded_params) < kTol; });
    if (!found) ++missed;
  }
  return {over == 0 && missed == 0,
          fmt("1000 instances n=3..8: max count %zu, over 4: %zu, seeded missed: %zu (tol %.0e)", most, over, missed,
              kTol)};
}

Outcome oracle_equivalence() {
  constexpr double kTol = 1e-6;
  constexpr std::size_t kGrid = 10000;
  std::mt19937_64 rng(4242);
  std::size_t mismatched = 0, roots = 0, shifts = 0;
  double worst = 0.0;
  for (int it = 0; it < 200; ++it) {
    const SeededInstance s = random_seeded_instance(3 + it % 5, rng);
    const PolygonInstance base(s.outer, s.inner, 0);
    for (std::size_t k = 0; k < base.size(); ++k) {
      const PolygonInstance inst = base.with_shift(static_cast<int>(k));
      const std::vector<double> want = roots_in_unit(solve_shift(inst));
      const std::vector<double> got = brute_force_scan(inst, kGrid);
      ++shifts;
      roots += want.size();
      const double g = gap(got, want);
      if (!(g < kTol)) ++mismatched;
      if (std::isfinite(g)) worst = std::max(worst, g);
    }
  }
  return {mismatched == 0, fmt("200 instances, %zu shift classes, %zu roots, grid %zu: mismatches %zu, max gap %.2e "
                               "(tol %.0e)",
                               shifts, roots, kGrid, mismatched, worst, kTol)};
}

Outcome conic_cross_check() {
  constexpr double kAgree = 1e-6, kMember = 1e-7;
  std::mt19937_64 rng(5151);
  std::size_t disagreements = 0, compared = 0;
  double worst_member = 0.0;
  for (int it = 0; it < 100; ++it) {
    const SeededInstance s = random_seeded_instance(3, rng);
    const PolygonInstance base(s.outer, s.inner, 0);
    for (int k = 0; k < 3; ++k) {
      const PolygonInstance inst = base.with_shift(k);
      std::vector<std::vector<double>> ref, via;
      for (const SolutionPolygon& p : solve_shift(inst).candidates) {
        if (p.valid) ref.push_back(p.params);
      }
      for (const SolutionPolygon& p : solve_via_conic(inst)) {
        if (p.valid) via.push_back(p.params);
      }
      compared += ref.size();
      bool ok = ref.size() == via.size();
      for (const auto& r : ref) {
        ok = ok && std::any_of(via.begin(), via.end(), [&](const auto& v) { return gap(r, v) < kAgree; });
      }
      if (!ok) ++disagreements;
    }
    // The five fixed points of the locus through the chain that ends on side A_0A_1.
    const auto samples = mb_locus(base, 1, 24);
    const Conic c = fit_locus_conic(samples);
    const Point2 a0 = s.outer.vertex(0), a1 = s.outer.vertex(1), a2 = s.outer.vertex(2);
    const std::vector<Point2>& cc = s.inner;
    const Point2 p = intersect_lines(line_through(a0, a1), line_through(cc[1], cc[2]));
    const Point2 q = intersect_lines(line_through(a0, a2), line_through(cc[0], cc[2]));
    for (Point2 x : {a0, cc[0], cc[1], p, q}) worst_member = std::max(worst_member, c.residual(x));
  }
  return {disagreements == 0 && worst_member < kMember,
          fmt("100 triangles: %zu solutions compared, %zu shift disagreements (tol %.0e); A_0,C_0,C_1,P,Q max residual "
              "%.2e (tol %.0e)",
              compared, disagreements, kAgree, worst_member, kMember)};
}

Outcome conic_generation() {
  constexpr double kResidual = 1e-7, kCoef = 1e-6;
  std::mt19937_64 rng(6060);
  double worst_res = 0.0, worst_end = 0.0, worst_step = 0.0;
  for (int n = 3; n <= 6; ++n) {
    for (int it = 0; it < 50; ++it) {
      const GeneralizedConfig cfg = random_generalized_config(n, rng);
      const auto samples = mb_locus(cfg.lines, cfg.points, 20);
      const Conic c = fit_locus_conic(samples);
      worst_res = std::max(worst_res, max_residual(c, samples));
      worst_end = std::max({worst_end, c.residual(cfg.points[0]), c.residual(cfg.points[n - 1])});
      if (n == 3) continue;
      // Step from the chain on the first n-1 lines to the full chain.
      const int k = n - 1;
      const std::vector<Line> lines(cfg.lines.begin(), cfg.lines.begin() + k);
      const std::vector<Point2> centers(cfg.points.begin(), cfg.points.begin() + k);
      const Conic omega = fit_locus_conic(mb_locus(lines, centers, 20));
      const Lemma51Result step = lemma51_locus(omega, cfg.points[0], cfg.points[k - 1], cfg.points[k], cfg.lines[k], 24);
      worst_step = std::max(worst_step, conic_distance(step.conic, c));
    }
  }
  return {worst_res < kResidual && worst_end < kResidual && worst_step < kCoef,
          fmt("n=3..6, 50 chains each: sample residual %.2e, C_0/C_{n-1} residual %.2e (tol %.0e); induction step "
              "coefficient gap %.2e (tol %.0e)",
              worst_res, worst_end, kResidual, worst_step, kCoef)};
}

Outcome generalized_count() {
  constexpr std::size_t kBound = 12;
  std::mt19937_64 rng(7007);
  std::size_t most = 0, over = 0, infinite = 0;
  for (int it = 0; it < 500; ++it) {
    const GeneralizedConfig cfg = random_generalized_config(3, rng);
    const GeneralizedResult r = enumerate_generalized(cfg.lines, cfg.points);
    most = std::max(most, r.count);
    if (r.count > kBound) ++over;
    if (r.infinite_family) ++infinite;
  }
  return {over == 0, fmt("500 configurations: max count %zu%s, over %zu: %zu, infinite families %zu", most,
                         most == kBound ? " (bound attained)" : " (bound not attained in this sample)", kBound, over,
                         infinite)};
}

Outcome octahedron() {
  const OctahedronExample ex = make_octahedron_example();
  const std::size_t oct = solve_graph(ex.graph, ex.gamma).solutions.size();
  const PolyhedronGraph tet = make_tetrahedron(), cube = make_cube();
  const std::size_t nt = solve_graph(tet, example1_gamma(tet)).solutions.size();
  const std::size_t nc = solve_graph(cube, example1_gamma(cube)).solutions.size();
  const bool warn_t = !parity_check(tet).all_even, warn_c = !parity_check(cube).all_even;
  return {oct == 4 && nt == 0 && nc == 0 && warn_t && warn_c,
          fmt("octahedron %zu graphs; tetrahedron %zu (odd parity %s); cube %zu (odd parity %s)", oct, nt,
              warn_t ? "yes" : "no", nc, warn_c ? "yes" : "no")};
}

Outcome construction() {
  constexpr double kTol = 1e-12;
  double worst_x = 0.0, worst_aic = 0.0, worst_eic = 0.0, aid6 = INFINITY;
  for (int n : {3, 5, 6, 7, 8, 12}) {
    const double a = 1.0;
    const ConstructionTrace t = construct_appendix_a(n, a);
    const double c = std::cos(std::numbers::pi / n);
    worst_x = std::max(worst_x, std::abs(t.x - a / (1.0 + c * c)));
    worst_aic = std::max(worst_aic, std::abs(t.len_ai_c - a * c));
    worst_eic = std::max(worst_eic, std::abs(t.len_ei_c - a * c));
    if (n == 6) aid6 = std::abs(t.len_ai_d - 2.0 * a / 8.0);
  }
  return {worst_x < kTol && worst_aic < kTol && aid6 < kTol,
          fmt("x gap %.2e; |A_iC| - a cos(pi/n) gap %.2e; n=6 |A_iD| - side/8 gap %.2e (tol %.0e). "
              "|E_iC| - a cos(pi/n) gap %.2e",
              worst_x, worst_aic, aid6, kTol, worst_eic)};
}

Outcome glued() {
  bool ok = true;
  std::string detail;
  const int want[2][3] = {{10, 24, 16}, {11, 27, 18}};
  for (int k : {2, 3}) {
    const PolyhedronGraph g = make_glued_octahedra(k);
    const std::size_t sols = solve_graph(g, example1_gamma(g)).solutions.size();
    const int* w = want[k - 2];
    const bool counts = static_cast<int>(g.vertices.size()) == w[0] && static_cast<int>(g.edges.size()) == w[1] &&
                        static_cast<int>(g.faces.size()) == w[2];
    ok = ok && counts && sols >= 1 && sols <= 4;
    detail += fmt("glued(%d): %zu/%zu/%zu (want %d/%d/%d), %zu graphs; ", k, g.vertices.size(), g.edges.size(),
                  g.faces.size(), w[0], w[1], w[2], sols);
  }
  for (int v : {10, 11}) {
    const PolyhedronGraph g = make_even_deltahedron(v);
    const std::size_t sols = solve_graph(g, example1_gamma(g)).solutions.size();
    detail += fmt("deltahedron(%d): %zu/%zu/%zu, %zu graphs; ", v, g.vertices.size(), g.edges.size(), g.faces.size(),
                  sols);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome cevian_inequality() {
  constexpr double kMargin = 1e-12;
  std::mt19937_64 rng(1111);
  std::size_t bad = 0;
  double least = INFINITY;
  for (int it = 0; it < 10000; ++it) {
    const Lemma21Config cfg = random_lemma21_config(rng);
    const CevianRatios r = lemma21_ratios(cfg.tri, cfg.d, cfg.e, cfg.transversal);
    const double margin = (r.lhs - r.rhs) / std::max(r.lhs, r.rhs);
    least = std::min(least, margin);
    if (!(margin > kMargin)) ++bad;
  }
  return {bad == 0, fmt("10000 configurations: violations %zu, smallest relative margin %.3e (need > %.0e)", bad, least,
                        kMargin)};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {"regular family identity", example1_identity},
    {"four regular polygons", four_polygons},
    {"count bound campaign", bound_campaign},
    {"grid-scan oracle", oracle_equivalence},
    {"conic cross-check", conic_cross_check},
    {"chain locus conics", conic_generation},
    {"generalized count", generalized_count},
    {"octahedron", octahedron},
    {"ruler-and-compass construction", construction},
    {"glued octahedra", glued},
    {"cevian inequality", cevian_inequality},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (int i = 1; i <= 11; ++i) {
    if (only != 0 && i != only) continue;
    const Criterion& c = kCriteria[i - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i, c.name, secs, o.detail.c_str());
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
