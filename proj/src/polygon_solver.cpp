#include "inscribe/polygon_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "detail.hpp"
#include "inscribe/error.hpp"

namespace inscribe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t wrap(long long i, std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

double line_param(const ParamSegment& seg, Point2 p) {
  const Point2 d = seg.direction();
  return dot(p - seg.start(), d) / dot(d, d);
}

}  // namespace

PolygonInstance::PolygonInstance(ConvexPolygon a, std::vector<Point2> c, int shift, double eps)
    : a_(std::move(a)), c_(std::move(c)), shift_(0) {
  const std::size_t n = a_.size();
  if (c_.size() != n) {
    throw Error(ErrorCode::InvalidInstance, "inner polygon must have as many points as the outer");
  }
  if (!is_strictly_convex_ccw(c_, eps)) {
    throw Error(ErrorCode::InvalidInstance, "inner polygon is not strictly convex and counterclockwise");
  }
  for (const Point2& p : c_) {
    if (!a_.contains_strictly(p, eps)) {
      throw Error(ErrorCode::InvalidInstance, "inner point is not strictly inside the outer polygon");
    }
  }
  shift_ = static_cast<int>(wrap(shift, n));
}

PolygonInstance::PolygonInstance(NoCheck, ConvexPolygon a, std::vector<Point2> c, int shift)
    : a_(std::move(a)), c_(std::move(c)), shift_(0) {
  if (c_.size() != a_.size()) {
    throw Error(ErrorCode::InvalidInstance, "inner polygon must have as many points as the outer");
  }
  shift_ = static_cast<int>(wrap(shift, c_.size()));
}

PolygonInstance PolygonInstance::unchecked(ConvexPolygon a, std::vector<Point2> c, int shift) {
  return PolygonInstance(NoCheck{}, std::move(a), std::move(c), shift);
}

Point2 PolygonInstance::center(std::size_t j) const {
  return c_[wrap(static_cast<long long>(j) - shift_, c_.size())];
}

PolygonInstance PolygonInstance::with_shift(int k) const {
  PolygonInstance copy = *this;
  copy.shift_ = static_cast<int>(wrap(k, c_.size()));
  return copy;
}

const char* to_string(Violation v) {
  switch (v) {
    case Violation::AtInfinity: return "AtInfinity";
    case Violation::OutOfSegment: return "OutOfSegment";
    case Violation::NotConvex: return "NotConvex";
    case Violation::CenterNotBetween: return "CenterNotBetween";
  }
  return "Unknown";
}

std::vector<Point2> SolutionPolygon::vertices(const ConvexPolygon& a) const {
  std::vector<Point2> out;
  out.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) out.push_back(a.side(i).at(params[i]));
  return out;
}

MoebiusMap side_projection(const PolygonInstance& inst, std::size_t j, double eps) {
  const ConvexPolygon& a = inst.outer();
  return central_projection(inst.center(j), a.side(j), a.side(j + 1), eps);
}

MoebiusMap return_map(const PolygonInstance& inst, double eps) {
  MoebiusMap m = MoebiusMap::identity();
  for (std::size_t j = 0; j < inst.size(); ++j) m = compose(side_projection(inst, j, eps), m);
  return m;
}

SolutionPolygon validate_params(const PolygonInstance& inst, std::vector<double> params, double eps) {
  SolutionPolygon sol;
  sol.shift = inst.shift();
  sol.params = std::move(params);
  const std::size_t n = inst.size();

  try {
    const ProjParam p0 = ProjParam::finite(sol.params.at(0));
    sol.closure_residual = chordal_distance(return_map(inst, 0.0)(p0), p0);
  } catch (const Error&) {
    sol.closure_residual = std::numeric_limits<double>::infinity();
  }

  if (!std::all_of(sol.params.begin(), sol.params.end(), [](double t) { return std::isfinite(t); })) {
    sol.reasons.push_back(Violation::AtInfinity);
    return sol;
  }
  if (!std::all_of(sol.params.begin(), sol.params.end(),
                   [eps](double t) { return strictly_inside_unit(t, eps); })) {
    sol.reasons.push_back(Violation::OutOfSegment);
  }
  const std::vector<Point2> b = sol.vertices(inst.outer());
  if (!is_strictly_convex_ccw(b, eps)) sol.reasons.push_back(Violation::NotConvex);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = wrap(static_cast<long long>(i) + inst.shift(), n);
    bool between = false;
    try {
      const ParamSegment side(b[j], b[(j + 1) % n], eps);
      between = strictly_inside_unit(segment_param(inst.inner()[i], side, 1e-6), eps);
    } catch (const Error&) {
      between = false;
    }
    if (!between) {
      sol.reasons.push_back(Violation::CenterNotBetween);
      break;
    }
  }
  sol.valid = sol.reasons.empty();
  return sol;
}

ShiftResult solve_shift(const PolygonInstance& inst, double eps) {
  ShiftResult out;
  const std::size_t n = inst.size();
  std::vector<MoebiusMap> maps;
  maps.reserve(n);
  for (std::size_t j = 0; j < n; ++j) maps.push_back(side_projection(inst, j, eps));
  MoebiusMap full = MoebiusMap::identity();
  for (const MoebiusMap& m : maps) full = compose(m, full);

  const FixedPointResult fp = fixed_points(full, eps);
  if (fp.kind == FixedPointKind::Identity) {
    out.identity = true;
    return out;
  }
  for (const ProjParam& start : fp.points) {
    std::vector<double> params(n);
    ProjParam p = start;
    for (std::size_t j = 0; j < n; ++j) {
      params[j] = p.is_infinite(1e-14) ? std::numeric_limits<double>::infinity() : p.value();
      p = maps[j](p);
    }
    SolutionPolygon sol = validate_params(inst, std::move(params), eps);
    sol.closure_residual = chordal_distance(p, start);
    out.candidates.push_back(std::move(sol));
  }
  return out;
}

SolutionSet solve_all(const ConvexPolygon& a, const std::vector<Point2>& c, const Tolerances& tol) {
  const PolygonInstance base(a, c, 0, tol.eps);
  std::vector<ShiftResult> per_shift(base.size());
  detail::parallel_for(base.size(), [&](std::size_t k) {
    per_shift[k] = solve_shift(base.with_shift(static_cast<int>(k)), tol.eps);
  });
  return detail::assemble_solution_set(per_shift, tol);
}

TheoremReport summarize(const SolutionSet& set) {
  TheoremReport r;
  r.count = set.solutions.size();
  r.bound_satisfied = r.count <= 4;
  for (const auto& [k, flag] : set.identity_flags) r.identity_detected = r.identity_detected || flag;
  for (const auto& [k, cnt] : set.per_shift_counts) r.max_per_shift = std::max(r.max_per_shift, cnt);
  return r;
}

TheoremReport theorem_check(const ConvexPolygon& a, const std::vector<Point2>& c, const Tolerances& tol) {
  return summarize(solve_all(a, c, tol));
}

double propagate_geometric(const PolygonInstance& inst, double t0, std::vector<double>* trail) {
  const ConvexPolygon& a = inst.outer();
  const std::size_t n = inst.size();
  Point2 b = a.side(0).at(t0);
  double t = t0;
  if (trail) trail->assign(1, t0);
  for (std::size_t j = 0; j < n; ++j) {
    const ParamSegment next = a.side(j + 1);
    try {
      const Line ray = line_through(b, inst.center(j), 1e-14);
      b = intersect_lines(ray, next.supporting_line(), 1e-14);
    } catch (const Error&) {
      return kNaN;
    }
    if (!is_finite(b)) return kNaN;
    t = line_param(next, b);
    if (trail) trail->push_back(t);
  }
  return t;
}

std::vector<double> brute_force_scan(const PolygonInstance& inst, std::size_t grid_size) {
  if (grid_size < 100) throw Error(ErrorCode::InvalidArgument, "brute_force_scan needs grid_size >= 100");
  std::vector<double> g(grid_size + 1);
  detail::parallel_for(g.size(), [&](std::size_t i) {
    g[i] = detail::scan_residual(inst, static_cast<double>(i) / static_cast<double>(grid_size));
  });
  const std::vector<detail::ScanSeed> seeds = detail::scan_seeds(g);
  std::vector<std::array<double, 2>> refined(seeds.size());
  detail::parallel_for(seeds.size(), [&](std::size_t i) { refined[i] = detail::refine_seed(inst, seeds[i]); });
  return detail::collect_roots(refined);
}

GeneralizedResult enumerate_generalized(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                        const Tolerances& tol) {
  const detail::GeneralizedSetup setup = detail::generalized_setup(lines, c, tol.eps);
  std::vector<detail::ChainOutcome> outcomes(setup.chains());
  detail::parallel_for(outcomes.size(), [&](std::size_t i) {
    outcomes[i] = detail::solve_chain(lines, c, setup, i, tol);
  });
  return detail::assemble_generalized(lines, c, outcomes, tol);
}

namespace detail {

SolutionSet assemble_solution_set(const std::vector<ShiftResult>& per_shift, const Tolerances& tol) {
  SolutionSet set;
  for (std::size_t k = 0; k < per_shift.size(); ++k) {
    const int shift = static_cast<int>(k);
    set.identity_flags[shift] = per_shift[k].identity;
    std::size_t valid = 0;
    for (const SolutionPolygon& sol : per_shift[k].candidates) {
      if (!sol.valid) continue;
      ++valid;
      const bool duplicate = std::any_of(set.solutions.begin(), set.solutions.end(), [&](const SolutionPolygon& s) {
        for (std::size_t i = 0; i < s.params.size(); ++i) {
          if (std::abs(s.params[i] - sol.params[i]) >= tol.match) return false;
        }
        return true;
      });
      if (!duplicate) set.solutions.push_back(sol);
    }
    set.per_shift_counts[shift] = valid;
  }
  return set;
}

double scan_residual(const PolygonInstance& inst, double t) {
  const double image = propagate_geometric(inst, t);
  return std::isfinite(image) ? image - t : kNaN;
}

std::vector<ScanSeed> scan_seeds(const std::vector<double>& g) {
  const std::size_t n = g.size() - 1;
  auto at = [n](std::size_t i) { return static_cast<double>(i) / static_cast<double>(n); };
  auto flips = [&](std::size_t i) {
    return i < n && std::isfinite(g[i]) && std::isfinite(g[i + 1]) &&
           ((g[i] < 0.0 && g[i + 1] > 0.0) || (g[i] > 0.0 && g[i + 1] < 0.0));
  };
  std::vector<ScanSeed> seeds;
  for (std::size_t i = 0; i <= n; ++i) {
    if (g[i] == 0.0) seeds.push_back({ScanSeed::Bracket, at(i), at(i)});
    if (flips(i)) seeds.push_back({ScanSeed::Bracket, at(i), at(i + 1)});
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!std::isfinite(g[i - 1]) || !std::isfinite(g[i]) || !std::isfinite(g[i + 1])) continue;
    if (g[i] == 0.0 || flips(i - 1) || flips(i)) continue;
    const double m = std::abs(g[i]);
    if (m <= std::abs(g[i - 1]) && m <= std::abs(g[i + 1])) {
      seeds.push_back({ScanSeed::Minimum, at(i - 1), at(i + 1)});
    }
  }
  return seeds;
}

namespace {

double bisect(const PolygonInstance& inst, double lo, double hi) {
  double glo = scan_residual(inst, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = scan_residual(inst, mid);
    if (!std::isfinite(gm)) return kNaN;
    if (gm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  const double residual = scan_residual(inst, root);
  return std::isfinite(residual) && std::abs(residual) < 1e-6 ? root : kNaN;
}

}  // namespace

std::array<double, 2> refine_seed(const PolygonInstance& inst, const ScanSeed& seed) {
  if (seed.kind == ScanSeed::Bracket) return {bisect(inst, seed.lo, seed.hi), kNaN};

  // Golden-section search for the extreme of g on the side facing zero. Two close
  // roots inside one grid cell show up as a dip through zero, a double root as a
  // touch.
  const double side = scan_residual(inst, 0.5 * (seed.lo + seed.hi)) < 0.0 ? -1.0 : 1.0;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto h = [&](double t) {
    const double v = scan_residual(inst, t);
    return std::isfinite(v) ? side * v : std::numeric_limits<double>::infinity();
  };
  double lo = seed.lo;
  double hi = seed.hi;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double h1 = h(x1);
  double h2 = h(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (h1 < h2) {
      hi = x2;
      x2 = x1;
      h2 = h1;
      x1 = hi - invphi * (hi - lo);
      h1 = h(x1);
      if (h1 < 0.0) break;
    } else {
      lo = x1;
      x1 = x2;
      h1 = h2;
      x2 = lo + invphi * (hi - lo);
      h2 = h(x2);
      if (h2 < 0.0) break;
    }
  }
  const double best = h1 < h2 ? x1 : x2;
  const double depth = h(best);
  if (depth < 0.0) return {bisect(inst, seed.lo, best), bisect(inst, best, seed.hi)};
  return {std::abs(depth) < 1e-9 ? best : kNaN, kNaN};
}

std::vector<double> collect_roots(const std::vector<std::array<double, 2>>& refined) {
  std::vector<double> roots;
  for (const auto& pair : refined) {
    for (double r : pair) {
      if (std::isfinite(r)) roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() || r - out.back() > 1e-8) out.push_back(r);
  }
  return out;
}

GeneralizedSetup generalized_setup(const std::vector<Line>& lines, const std::vector<Point2>& c, double eps) {
  const std::size_t n = lines.size();
  if (n < 3 || c.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "generalized enumeration needs n >= 3 lines and n points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) intersect_lines(lines[i], lines[j], eps);
  }
  GeneralizedSetup setup;
  std::vector<std::size_t> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  do {
    std::vector<std::size_t> order{0};
    order.insert(order.end(), rest.begin(), rest.end());
    setup.orders.push_back(std::move(order));
  } while (std::next_permutation(rest.begin(), rest.end()));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    setup.assignments.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return setup;
}

ChainOutcome solve_chain(const std::vector<Line>& lines, const std::vector<Point2>& c,
                         const GeneralizedSetup& setup, std::size_t index, const Tolerances& tol) {
  ChainOutcome out;
  const std::size_t n = lines.size();
  const std::vector<std::size_t>& order = setup.orders[index / setup.assignments.size()];
  const std::vector<std::size_t>& assign = setup.assignments[index % setup.assignments.size()];

  std::vector<ParamSegment> segs;
  segs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Line& l = lines[order[j]];
    segs.emplace_back(l.anchor(), l.anchor() + l.direction(), 0.0);
  }
  std::vector<MoebiusMap> maps;
  MoebiusMap full = MoebiusMap::identity();
  try {
    for (std::size_t j = 0; j < n; ++j) {
      maps.push_back(central_projection(c[assign[j]], segs[j], segs[(j + 1) % n], tol.eps));
      full = compose(maps.back(), full);
    }
  } catch (const Error&) {
    out.degenerate = true;
    return out;
  }
  const FixedPointResult fp = fixed_points(full, tol.eps);
  if (fp.kind == FixedPointKind::Identity) {
    out.identity = true;
    return out;
  }

  double scale = 1.0;
  for (const Point2& p : c) scale = std::max(scale, norm(p));
  for (const ProjParam& start : fp.points) {
    std::vector<Point2> poly;
    ProjParam p = start;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (p.is_infinite(1e-14)) {
        ok = false;
        break;
      }
      const Point2 b = segs[j].at(p.value());
      const Point2 v_prev = intersect_lines(lines[order[(j + n - 1) % n]], lines[order[j]], 0.0);
      const Point2 v_next = intersect_lines(lines[order[j]], lines[order[(j + 1) % n]], 0.0);
      ok = is_finite(b) && distance(b, v_prev) > tol.match * scale && distance(b, v_next) > tol.match * scale;
      poly.push_back(b);
      p = maps[j](p);
    }
    for (std::size_t i = 0; ok && i < poly.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < poly.size(); ++j) {
        ok = distance(poly[i], poly[j]) > tol.match * scale;
      }
    }
    if (ok) out.polygons.push_back(std::move(poly));
  }
  return out;
}

GeneralizedResult assemble_generalized(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                       const std::vector<ChainOutcome>& outcomes, const Tolerances& tol) {
  GeneralizedResult res;
  const std::size_t n = lines.size();
  std::size_t fact = 1;
  for (std::size_t i = 2; i < n; ++i) fact *= i;
  res.bound = fact * fact * n;
  res.chains = outcomes.size();

  double scale = 1.0;
  for (const Point2& p : c) scale = std::max(scale, norm(p));
  auto same_set = [&](const std::vector<Point2>& p, const std::vector<Point2>& q) {
    for (const Point2& x : p) {
      const bool hit = std::any_of(q.begin(), q.end(),
                                   [&](const Point2& y) { return distance(x, y) <= tol.match * scale; });
      if (!hit) return false;
    }
    return true;
  };
  for (const ChainOutcome& o : outcomes) {
    res.infinite_family = res.infinite_family || o.identity;
    if (o.degenerate) ++res.degenerate_chains;
    for (const auto& poly : o.polygons) {
      const bool seen = std::any_of(res.solutions.begin(), res.solutions.end(),
                                    [&](const std::vector<Point2>& s) { return same_set(s, poly); });
      if (!seen) res.solutions.push_back(poly);
    }
  }
  res.count = res.solutions.size();
  return res;
}

}  // namespace detail

}  // namespace inscribe
