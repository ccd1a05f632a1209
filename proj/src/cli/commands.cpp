#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>

#include "inscribe/cli.hpp"
#include "inscribe/conic.hpp"
#include "inscribe/error.hpp"
#include "inscribe/polygon_solver.hpp"
#include "inscribe/regular_examples.hpp"

namespace inscribe::cli {

using nlohmann::json;

namespace {

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::DegenerateChain:
    case ErrorCode::RankDeficient:
    case ErrorCode::DegenerateMap:
    case ErrorCode::LineOnConic:
      return kExitDegenerate;
    default:
      return kExitInput;
  }
}

CommandOutput guarded(const std::function<CommandOutput()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_output(exit_for(e.code()), std::string(to_string(e.code())), e.what());
  } catch (const json::exception& e) {
    return error_output(kExitInput, "ParseError", e.what());
  } catch (const std::exception& e) {
    return error_output(kExitInput, "InvalidArgument", e.what());
  }
}

json pt(Point2 p) { return json::array({p.x, p.y}); }

json pts(const std::vector<Point2>& v) {
  json out = json::array();
  for (const Point2& p : v) out.push_back(pt(p));
  return out;
}

json tolerances(const Tolerances& tol) {
  return {{"eps", tol.eps}, {"match", tol.match}, {"stitch", tol.stitch}};
}

json result_head(const std::string& kind, const InstanceDocument& doc, const RunOptions& opt) {
  return {{"schema", kSchema},
          {"kind", kind},
          {"version", kVersion},
          {"tolerances", tolerances(opt.tol)},
          {"instance", to_json(doc)}};
}

json solution_json(const SolutionPolygon& s, const ConvexPolygon& a) {
  json reasons = json::array();
  for (Violation v : s.reasons) reasons.push_back(to_string(v));
  return {{"shift", s.shift},
          {"params", s.params},
          {"vertices", pts(s.vertices(a))},
          {"valid", s.valid},
          {"reasons", reasons},
          {"closure_residual", s.closure_residual}};
}

template <class P>
const P& expect(const InstanceDocument& doc, const char* command) {
  if (!std::holds_alternative<P>(doc.payload)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(command) + " does not accept a " + doc.kind() + " document");
  }
  return std::get<P>(doc.payload);
}

std::vector<Line> to_lines(const std::vector<std::array<double, 3>>& raw) {
  std::vector<Line> out;
  for (const auto& l : raw) out.push_back(Line::from_coefficients(l[0], l[1], l[2]));
  return out;
}

std::vector<double> moebius_roots(const PolygonInstance& inst, double eps) {
  std::vector<double> out;
  for (const SolutionPolygon& s : solve_shift(inst, eps).candidates) {
    const double t = s.params[0];
    if (std::isfinite(t) && t > 0.0 && t < 1.0) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

json oracle_report(const PolygonInstance& base, const RunOptions& opt) {
  json per_shift = json::array();
  double worst = 0.0;
  bool agree = true;
  for (std::size_t k = 0; k < base.size(); ++k) {
    const PolygonInstance inst = base.with_shift(static_cast<int>(k));
    const std::vector<double> scan = brute_force_scan(inst, opt.oracle_grid);
    const std::vector<double> fixed = moebius_roots(inst, opt.tol.eps);
    if (scan.size() == fixed.size()) {
      for (std::size_t i = 0; i < scan.size(); ++i) worst = std::max(worst, std::abs(scan[i] - fixed[i]));
    } else {
      agree = false;
    }
    per_shift.push_back({{"shift", k}, {"scan_roots", scan}, {"fixed_points", fixed}});
  }
  agree = agree && worst < 1e-6;
  return {{"grid", opt.oracle_grid}, {"per_shift", per_shift}, {"max_discrepancy", worst}, {"agree", agree}};
}

json map_json(const std::map<int, std::size_t>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

InstanceDocument polygon_document(const ConvexPolygon& a, const std::vector<Point2>& c,
                                  std::map<std::string, std::string> meta) {
  return {PolygonPayload{{a.vertices().begin(), a.vertices().end()}, c}, std::move(meta)};
}

// Residual of l meet m on the conic; parallel lines meet at infinity, where
// membership is the quadratic part vanishing on the common direction.
double meet_residual(const Conic& c, const Line& l, const Line& m) {
  try {
    return c.residual(intersect_lines(l, m));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParallelLines) throw;
    const Point2 d = l.direction();
    return std::abs(c.quadratic(d)) / dot(d, d);
  }
}

std::string num(double v) {
  json j = v;
  return j.dump();
}

}  // namespace

CommandOutput cmd_solve_polygon(const std::string& input, const RunOptions& opt) {
  return guarded([&] {
    const InstanceDocument doc = parse_instance(input);
    const PolygonPayload& p = expect<PolygonPayload>(doc, "solve-polygon");
    const ConvexPolygon a(p.outer, opt.tol.eps);
    const PolygonInstance inst(a, p.inner, 0, opt.tol.eps);

    const SolutionSet set = solve_all(a, p.inner, opt.tol);
    const TheoremReport rep = summarize(set);
    json out = result_head("polygon-result", doc, opt);
    json sols = json::array();
    for (const SolutionPolygon& s : set.solutions) sols.push_back(solution_json(s, a));
    json identity = json::array();
    for (const auto& [k, flag] : set.identity_flags) {
      if (flag) identity.push_back(k);
    }
    out["count"] = rep.count;
    out["solutions"] = sols;
    out["per_shift_counts"] = map_json(set.per_shift_counts);
    out["diagnostics"] = {{"bound_satisfied", rep.bound_satisfied},
                          {"identity_detected", rep.identity_detected},
                          {"identity_shifts", identity},
                          {"max_per_shift", rep.max_per_shift}};
    if (opt.oracle) out["oracle"] = oracle_report(inst, opt);
    return CommandOutput{rep.identity_detected ? kExitDegenerate : kExitOk, emit(out)};
  });
}

CommandOutput cmd_solve_polyhedron(const std::string& input, const RunOptions& opt) {
  return guarded([&] {
    const InstanceDocument doc = parse_instance(input);
    const PolyhedronPayload& p = expect<PolyhedronPayload>(doc, "solve-polyhedron");
    const PolyhedronGraph g = make_graph(p.vertices, p.faces);
    const GraphReport report = validate_graph(g, opt.tol.eps);
    if (!report.ok()) {
      std::string msg = "invalid polyhedron";
      for (const std::string& v : report.violations) msg += "; " + v;
      throw Error(ErrorCode::InvalidGraph, msg);
    }
    const ParityReport parity = parity_check(g);
    const GraphSolveResult r = solve_graph(g, p.gamma, opt.tol);

    json out = result_head("polyhedron-result", doc, opt);
    json face_counts = json::array();
    for (const SolutionSet& s : r.face_solutions) face_counts.push_back(s.solutions.size());
    json sols = json::array();
    for (const InscribedGraphSolution& s : r.solutions) {
      sols.push_back({{"edge_params", s.edge_params}, {"per_face_choice", s.per_face_choice}});
    }
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back({e[0], e[1]});
    json warnings = json::array();
    if (!parity.all_even) {
      json odd = json::array();
      for (std::size_t v = 0; v < parity.face_degree.size(); ++v) {
        if (parity.face_degree[v] % 2 != 0) odd.push_back(v);
      }
      warnings.push_back("odd number of faces at vertices " + odd.dump());
    }
    out["global_count"] = r.solutions.size();
    out["solutions"] = sols;
    out["edges"] = edges;
    out["per_face_counts"] = face_counts;
    out["parity"] = {{"face_degree", parity.face_degree}, {"all_even", parity.all_even}};
    out["diagnostics"] = {{"bound_satisfied", r.bound_satisfied},
                          {"unsolvable_faces", r.unsolvable_faces},
                          {"euler", report.euler},
                          {"warnings", warnings}};
    return CommandOutput{kExitOk, emit(out)};
  });
}

CommandOutput cmd_gen_regular(int n, double a, double phase, const RunOptions& opt) {
  return guarded([&] {
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "regular polygon requires n >= 3");
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "a must be positive");
    const Example1Family fam = make_regular_instance({n, a, {}, phase});
    const InstanceDocument doc = polygon_document(
        fam.outer, fam.inner, {{"generator", "regular"}, {"n", std::to_string(n)}, {"a", num(a)}, {"phase", num(phase)}});
    json out = to_json(doc);
    json polys = json::array();
    for (const ExpectedPolygon& e : fam.polygons) {
      polys.push_back({{"shift", e.shift},
                       {"x", e.x},
                       {"reflected", e.reflected},
                       {"params", e.params},
                       {"vertices", pts(e.vertices)}});
    }
    out["expected"] = {{"x_values", fam.x_values}, {"polygons", polys}};
    if (opt.construct) {
      const ConstructionTrace t = construct_appendix_a(n, a);
      out["construction"] = {
          {"special_case", t.special_case},
          {"note", t.special_case ? "n = 4: x = 2a/3 directly" : "general case"},
          {"points",
           {{"O", pt(t.o)}, {"A_i", pt(t.a_i)}, {"A_i+1", pt(t.a_next)}, {"A_i+2", pt(t.a_next2)},
            {"E_i", pt(t.e_i)}, {"C", pt(t.c)}, {"D", pt(t.d)}, {"G", pt(t.g)}, {"F", pt(t.f)}, {"B", pt(t.b)}}},
          {"lengths",
           {{"A_iC", t.len_ai_c}, {"E_iC", t.len_ei_c}, {"E_iD", t.len_ei_d}, {"A_iD", t.len_ai_d},
            {"A_i+1D", t.len_anext_d}, {"A_i+1G", t.len_anext_g}, {"A_i+1F", t.len_anext_f}}},
          {"x", t.x}};
    }
    return CommandOutput{kExitOk, emit(out)};
  });
}

CommandOutput cmd_gen_octahedron(const std::string& solid, int glued, const RunOptions& opt) {
  (void)opt;
  return guarded([&] {
    PolyhedronGraph g;
    std::vector<InscribedGraphSolution> betas;
    std::map<std::string, std::string> meta{{"generator", solid}};
    if (glued > 1) {
      g = make_glued_octahedra(glued);
      meta = {{"generator", "glued-octahedra"}, {"count", std::to_string(glued)}};
    } else if (glued < 1) {
      throw Error(ErrorCode::InvalidArgument, "glued count must be at least 1");
    } else if (solid == "octahedron") {
      OctahedronExample ex = make_octahedron_example();
      g = std::move(ex.graph);
      betas = std::move(ex.betas);
    } else if (solid == "tetrahedron") {
      g = make_tetrahedron();
    } else if (solid == "cube") {
      g = make_cube();
    } else if (solid == "deltahedron10") {
      g = make_even_deltahedron(10);
    } else if (solid == "deltahedron11") {
      g = make_even_deltahedron(11);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown solid \"" + solid + "\"");
    }
    const GammaSpec gamma = example1_gamma(g);
    const InstanceDocument doc{PolyhedronPayload{g.vertices, g.faces, gamma}, meta};
    json out = to_json(doc);
    if (!betas.empty()) {
      json b = json::array();
      for (const InscribedGraphSolution& s : betas) b.push_back({{"edge_params", s.edge_params}});
      json edges = json::array();
      for (const auto& e : g.edges) edges.push_back({e[0], e[1]});
      out["expected"] = {{"edges", edges}, {"betas", b}};
    }
    return CommandOutput{kExitOk, emit(out)};
  });
}

CommandOutput cmd_conic_locus(const std::string& input, const RunOptions& opt) {
  return guarded([&] {
    const InstanceDocument doc = parse_instance(input);
    PolygonChain chain;
    if (const auto* p = std::get_if<PolygonPayload>(&doc.payload)) {
      const PolygonInstance inst(ConvexPolygon(p->outer, opt.tol.eps), p->inner, opt.shift, opt.tol.eps);
      chain = polygon_chain(inst, opt.target);
    } else {
      const ConicChainPayload& c = expect<ConicChainPayload>(doc, "conic-locus");
      chain = {to_lines(c.lines), c.centers};
    }
    const std::size_t n = chain.lines.size();
    const std::vector<LocusSample> samples = mb_locus(chain.lines, chain.centers, opt.samples);
    const Conic conic = fit_locus_conic(samples);

    json sj = json::array();
    double worst = 0.0, total = 0.0;
    for (const LocusSample& s : samples) {
      const double r = conic.residual(s.x);
      worst = std::max(worst, r);
      total += r;
      sj.push_back({{"s", s.s}, {"x", pt(s.x)}, {"residual", r}});
    }
    json membership = {{"C_first", conic.residual(chain.centers.front())},
                       {"C_last", conic.residual(chain.centers.back())}};
    if (n == 3) {
      // The vertex between the last two lines and the two center-line hits.
      const auto& l = chain.lines;
      const auto& c = chain.centers;
      membership["vertex"] = meet_residual(conic, l[1], l[2]);
      membership["P"] = meet_residual(conic, l[2], line_through(c[0], c[1]));
      membership["Q"] = meet_residual(conic, l[1], line_through(c[2], c[1]));
    }
    json out = result_head("conic-locus-result", doc, opt);
    out["conic"] = {{"coefficients", conic.coefficients()},
                    {"degenerate", conic.degenerate()},
                    {"normalized_determinant", conic.normalized_determinant()}};
    out["chain"] = {{"centers", pts(chain.centers)}};
    out["samples"] = sj;
    out["residuals"] = {{"max", worst}, {"mean", total / static_cast<double>(samples.size())}, {"membership", membership}};
    return CommandOutput{conic.degenerate() ? kExitDegenerate : kExitOk, emit(out)};
  });
}

CommandOutput cmd_enumerate_generalized(const std::string& input, const RunOptions& opt) {
  return guarded([&] {
    const InstanceDocument doc = parse_instance(input);
    const GeneralizedPayload& p = expect<GeneralizedPayload>(doc, "enumerate-generalized");
    if (p.lines.size() > 5) throw Error(ErrorCode::InvalidArgument, "enumeration is limited to n <= 5");
    const GeneralizedResult r = enumerate_generalized(to_lines(p.lines), p.points, opt.tol);
    json sols = json::array();
    for (const auto& poly : r.solutions) sols.push_back(pts(poly));
    json out = result_head("generalized-result", doc, opt);
    out["count"] = r.count;
    out["bound"] = r.bound;
    out["infinite_family"] = r.infinite_family;
    out["chains"] = r.chains;
    out["degenerate_chains"] = r.degenerate_chains;
    out["solutions"] = sols;
    return CommandOutput{r.infinite_family ? kExitDegenerate : kExitOk, emit(out)};
  });
}

CommandOutput cmd_render(const std::string& input, const std::string& path, const RunOptions& opt) {
  return guarded([&] {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
    const std::string svg = render_svg(doc, opt.axis);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    f << svg;
    f.close();
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    auto count = [&](const std::string& tag) {
      std::size_t c = 0;
      for (std::size_t pos = svg.find(tag); pos != std::string::npos; pos = svg.find(tag, pos + 1)) ++c;
      return c;
    };
    const json out = {{"schema", kSchema},
                      {"kind", "render-result"},
                      {"path", path},
                      {"polygons", count("<polygon ")},
                      {"polylines", count("<polyline ")},
                      {"circles", count("<circle ")}};
    return CommandOutput{kExitOk, emit(out)};
  });
}

}  // namespace inscribe::cli
