#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "inscribe/cli.hpp"
#include "inscribe/random_instances.hpp"

using namespace inscribe;
using namespace inscribe::cli;
using nlohmann::json;

namespace {

json parsed(const CommandOutput& o) { return json::parse(o.out); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "inscribe_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct Run {
  int code;
  std::string out;
};

Run shell(const std::string& cmd) {
  const auto out_path = scratch("stdout.txt");
  const int status = std::system((cmd + " > " + out_path.string()).c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out_path)};
}

std::string tool() { return INSCRIBE_TOOL_PATH; }

std::vector<std::array<double, 3>> raw_lines(const std::vector<Line>& lines) {
  std::vector<std::array<double, 3>> out;
  for (const Line& l : lines) out.push_back({l.a, l.b, l.c});
  return out;
}

std::string generalized_doc(const GeneralizedConfig& cfg) {
  return emit(to_json(InstanceDocument{GeneralizedPayload{raw_lines(cfg.lines), cfg.points}, {}}));
}

std::string chain_doc(const GeneralizedConfig& cfg) {
  return emit(to_json(InstanceDocument{ConicChainPayload{raw_lines(cfg.lines), cfg.points}, {}}));
}

// Three concurrent lines and two triangles on them; their side crossings make a
// chain that closes for every start.
GeneralizedConfig desargues_config() {
  const std::vector<Point2> dirs{{1, 0}, {-0.5, 1}, {-0.4, -1}};
  const double sp[] = {1.0, 1.3, 0.8}, sq[] = {2.1, 0.6, 1.7};
  GeneralizedConfig cfg;
  std::vector<Point2> p, q;
  for (int i = 0; i < 3; ++i) {
    cfg.lines.push_back(line_through({0, 0}, dirs[i]));
    p.push_back(sp[i] * dirs[i]);
    q.push_back(sq[i] * dirs[i]);
  }
  for (int i = 0; i < 3; ++i) {
    cfg.points.push_back(intersect_lines(line_through(p[i], p[(i + 1) % 3]), line_through(q[i], q[(i + 1) % 3])));
  }
  return cfg;
}

}  // namespace

TEST_CASE("documents round-trip") {
  const RunOptions opt;
  std::vector<InstanceDocument> docs;
  docs.push_back(parse_instance(cmd_gen_regular(5, 1.0, 0.3, opt).out));
  docs.push_back(parse_instance(cmd_gen_octahedron("octahedron", 1, opt).out));
  docs.push_back(parse_instance(cmd_gen_octahedron("deltahedron11", 1, opt).out));
  std::mt19937_64 rng(9);
  for (int it = 0; it < 20; ++it) {
    const GeneralizedConfig cfg = random_generalized_config(3 + it % 3, rng);
    docs.push_back(parse_instance(generalized_doc(cfg)));
    docs.push_back(parse_instance(chain_doc(cfg)));
  }
  InstanceDocument odd{PolygonPayload{{{0.1, 1.0 / 3.0}, {1e300, -2.5e-310}, {-0.0, 7.0}}, {{1, 2}, {3, 4}, {5, 6}}},
                       {{"note", "values at the edges of double"}}};
  docs.push_back(odd);
  for (const InstanceDocument& d : docs) {
    const InstanceDocument back = parse_instance(emit(to_json(d)));
    CHECK(back == d);
    CHECK(back.kind() == d.kind());
  }
}

TEST_CASE("malformed input never escapes as an exception") {
  const RunOptions opt;
  const std::string bad[] = {
      "",
      "{",
      "[]",
      R"({"schema":"inscribe/2","kind":"polygon","payload":{}})",
      R"({"schema":"inscribe/1","kind":"hexagon","payload":{}})",
      R"({"schema":"inscribe/1","kind":"polygon","payload":{"outer":[[0,0],[1,0],[0,1]]}})",
      R"({"schema":"inscribe/1","kind":"polygon","payload":{"outer":[[0,0],[1,0],["x",1]],"inner":[[0,0],[1,0],[0,1]]}})",
      R"({"schema":"inscribe/1","kind":"polygon","payload":{"outer":[[0,0],[1,0],[0,1]],"inner":[[0,0]]}})",
      R"({"schema":"inscribe/1","kind":"polygon","payload":{"outer":[[0,0],[1,0],[0,1]],"inner":[[5,5],[6,5],[5,6]]}})",
      R"({"schema":"inscribe/1","kind":"polygon","payload":{"outer":[[0,0],[1,0],[0,1]],"inner":[[0.2,0.2],[0.3,0.2],[0.2,0.3]]},"metadata":{"k":1}})",
  };
  for (const std::string& s : bad) {
    const CommandOutput o = cmd_solve_polygon(s, opt);
    CHECK(o.exit_code == kExitInput);
    const json j = parsed(o);
    CHECK(j.at("error").at("code").is_string());
    CHECK(j.at("error").at("message").is_string());
  }
  const CommandOutput empty =
      cmd_solve_polygon(R"({"schema":"inscribe/1","kind":"polygon","payload":{"outer":[],"inner":[]}})", opt);
  CHECK(empty.exit_code == kExitInput);
  CHECK(parsed(empty)["error"]["message"] == "polygon requires n >= 3");
  CHECK(cmd_solve_polyhedron(cmd_gen_regular(3, 1.0, 0.0, opt).out, opt).exit_code == kExitInput);
}

TEST_CASE("solve-polygon") {
  const RunOptions opt;
  const std::string inst = cmd_gen_regular(3, 1.0, 0.0, opt).out;
  const CommandOutput o = cmd_solve_polygon(inst, opt);
  REQUIRE(o.exit_code == kExitOk);
  const json r = parsed(o);
  CHECK(r["count"] == 4);
  CHECK(r["schema"] == kSchema);
  CHECK(r["version"] == kVersion);
  CHECK(r["tolerances"]["eps"] == opt.tol.eps);
  CHECK(r["per_shift_counts"]["0"] == 2);
  CHECK(r["per_shift_counts"]["2"] == 2);
  CHECK(r["diagnostics"]["identity_detected"] == false);
  CHECK_FALSE(r.contains("oracle"));

  // The echoed instance reproduces the solutions.
  const json again = parsed(cmd_solve_polygon(r["instance"].dump(), opt));
  CHECK(again["solutions"] == r["solutions"]);
  CHECK(cmd_solve_polygon(inst, opt).out == o.out);

  RunOptions with_oracle = opt;
  with_oracle.oracle = true;
  const json orc = parsed(cmd_solve_polygon(inst, with_oracle))["oracle"];
  CHECK(orc["agree"] == true);
  CHECK(orc["max_discrepancy"].get<double>() < 1e-6);
  CHECK(orc["per_shift"].size() == 3);
  CHECK(orc["per_shift"][0]["scan_roots"].size() == 2);
}

TEST_CASE("gen-regular") {
  const RunOptions opt;
  const json five = parsed(cmd_gen_regular(5, 1.0, 0.0, opt));
  const double c = std::cos(std::numbers::pi / 5);
  CHECK(five["expected"]["x_values"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(five["expected"]["x_values"][1].get<double>() == doctest::Approx(1.0 / (1.0 + c * c)).epsilon(1e-14));
  CHECK(five["expected"]["polygons"].size() == 4);
  CHECK_FALSE(five.contains("construction"));

  RunOptions construct = opt;
  construct.construct = true;
  const json four = parsed(cmd_gen_regular(4, 1.5, 0.0, construct));
  CHECK(four["construction"]["special_case"] == true);
  CHECK(four["construction"]["x"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cmd_gen_regular(2, 1.0, 0.0, opt).exit_code == kExitInput);
  CHECK(cmd_gen_regular(3, -1.0, 0.0, opt).exit_code == kExitInput);
}

TEST_CASE("solve-polyhedron") {
  const RunOptions opt;
  const json oct = parsed(cmd_solve_polyhedron(cmd_gen_octahedron("octahedron", 1, opt).out, opt));
  CHECK(oct["global_count"] == 4);
  CHECK(oct["parity"]["all_even"] == true);
  CHECK(oct["diagnostics"]["warnings"].empty());

  const CommandOutput tet = cmd_solve_polyhedron(cmd_gen_octahedron("tetrahedron", 1, opt).out, opt);
  CHECK(tet.exit_code == kExitOk);
  CHECK(parsed(tet)["global_count"] == 0);
  CHECK(parsed(tet)["diagnostics"]["warnings"].size() == 1);

  // A fin on edge 0-1 of the tetrahedron gives that edge three faces.
  json doc = json::parse(cmd_gen_octahedron("tetrahedron", 1, opt).out);
  const auto& v = doc["payload"]["vertices"];
  const std::array<double, 3> p0 = v[0], p1 = v[1];
  doc["payload"]["vertices"].push_back({0.5 * (p0[0] + p1[0]) + 0.7, 0.5 * (p0[1] + p1[1]) - 0.7, 0.5 * (p0[2] + p1[2])});
  doc["payload"]["faces"].push_back({0, 1, 4});
  doc["payload"]["gamma"].push_back(doc["payload"]["gamma"][0]);
  const CommandOutput fin = cmd_solve_polyhedron(doc.dump(), opt);
  CHECK(fin.exit_code == kExitInput);

  const json glued = parsed(cmd_solve_polyhedron(cmd_gen_octahedron("octahedron", 3, opt).out, opt));
  CHECK(glued["global_count"].get<int>() >= 1);
  CHECK(glued["global_count"].get<int>() <= 4);
}

TEST_CASE("conic-locus") {
  RunOptions opt;
  opt.samples = 20;
  std::mt19937_64 rng(40);
  const GeneralizedConfig three = random_generalized_config(3, rng);
  const CommandOutput o3 = cmd_conic_locus(chain_doc(three), opt);
  REQUIRE(o3.exit_code == kExitOk);
  const json r3 = parsed(o3);
  CHECK(r3["residuals"]["max"].get<double>() < 1e-8);
  for (const char* k : {"C_first", "C_last", "vertex", "P", "Q"}) {
    CHECK(r3["residuals"]["membership"][k].get<double>() < 1e-8);
  }
  const GeneralizedConfig five = random_generalized_config(5, rng);
  const json r5 = parsed(cmd_conic_locus(chain_doc(five), opt));
  CHECK(r5["residuals"]["membership"]["C_first"].get<double>() < 1e-8);
  CHECK(r5["residuals"]["membership"]["C_last"].get<double>() < 1e-8);
  CHECK_FALSE(r5["residuals"]["membership"].contains("P"));

  RunOptions few = opt;
  few.samples = 4;
  CHECK(cmd_conic_locus(chain_doc(three), few).exit_code == kExitInput);

  // A closing chain sends every sample to the first line: no conic to fit.
  const CommandOutput flat = cmd_conic_locus(chain_doc(desargues_config()), opt);
  CHECK(flat.exit_code == kExitDegenerate);
  CHECK(parsed(flat)["error"]["code"] == "DegenerateChain");

  RunOptions on_polygon = opt;
  on_polygon.target = 1;
  const json poly = parsed(cmd_conic_locus(cmd_gen_regular(3, 1.0, 0.0, opt).out, on_polygon));
  for (const char* k : {"C_first", "C_last", "vertex", "P", "Q"}) {
    CHECK(poly["residuals"]["membership"][k].get<double>() < 1e-8);
  }
}

TEST_CASE("enumerate-generalized") {
  const RunOptions opt;
  std::mt19937_64 rng(41);
  const json r3 = parsed(cmd_enumerate_generalized(generalized_doc(random_generalized_config(3, rng)), opt));
  CHECK(r3["bound"] == 12);
  CHECK(r3["count"].get<int>() <= 12);
  CHECK(r3["solutions"].size() == r3["count"].get<std::size_t>());
  const json r4 = parsed(cmd_enumerate_generalized(generalized_doc(random_generalized_config(4, rng)), opt));
  CHECK(r4["bound"] == 144);
  CHECK(r4["count"].get<int>() <= 144);
  CHECK(cmd_enumerate_generalized(generalized_doc(random_generalized_config(6, rng)), opt).exit_code == kExitInput);
  const CommandOutput deg = cmd_enumerate_generalized(generalized_doc(desargues_config()), opt);
  CHECK(deg.exit_code == kExitDegenerate);
  CHECK(parsed(deg)["infinite_family"] == true);
}

TEST_CASE("render") {
  RunOptions opt;
  const std::string solved = cmd_solve_polygon(cmd_gen_regular(3, 1.0, 0.0, opt).out, opt).out;
  const auto path = scratch("tri.svg");
  const json r = parsed(cmd_render(solved, path.string(), opt));
  CHECK(r["polygons"] == 6);
  const std::string first = slurp(path);
  CHECK(first.rfind("<?xml", 0) == 0);
  CHECK(first.find("stroke=\"#000000\"") != std::string::npos);
  CHECK(first.find("stroke=\"#d62728\"") != std::string::npos);
  REQUIRE(cmd_render(solved, path.string(), opt).exit_code == kExitOk);
  CHECK(slurp(path) == first);

  opt.samples = 20;
  std::mt19937_64 rng(42);
  const std::string locus = cmd_conic_locus(chain_doc(random_generalized_config(4, rng)), opt).out;
  const json lr = parsed(cmd_render(locus, scratch("locus.svg").string(), opt));
  CHECK(lr["polylines"].get<int>() >= 1);
  CHECK(lr["circles"] == 4);

  const std::string poly = cmd_solve_polyhedron(cmd_gen_octahedron("octahedron", 1, opt).out, opt).out;
  for (char axis : {'x', 'y', 'z'}) {
    opt.axis = axis;
    const json pr = parsed(cmd_render(poly, scratch(std::string("oct_") + axis + ".svg").string(), opt));
    CHECK(pr["polygons"] == 8 + 4 * 8 + 8);
  }
  CHECK(slurp(scratch("oct_x.svg")) != slurp(scratch("oct_z.svg")));

  const CommandOutput bad = cmd_render(solved, "/nonexistent-dir/x.svg", opt);
  CHECK(bad.exit_code == kExitInput);
  CHECK(parsed(bad)["error"]["code"] == "IoError");
}

TEST_CASE("binary") {
  const RunOptions opt;
  const auto inst = scratch("tri.json");
  {
    const Run gen = shell(tool() + " gen-regular -n 3");
    REQUIRE(gen.code == 0);
    CHECK(gen.out == cmd_gen_regular(3, 1.0, 0.0, opt).out);
    std::ofstream(inst) << gen.out;
  }
  const Run solved = shell(tool() + " solve-polygon " + inst.string());
  CHECK(solved.code == 0);
  CHECK(solved.out == cmd_solve_polygon(slurp(inst), opt).out);
  CHECK(shell(tool() + " solve-polygon < " + inst.string()).out == solved.out);
  CHECK(shell(tool() + " solve-polygon " + inst.string()).out == solved.out);

  CHECK(shell(tool() + " gen-regular -n 2").code == 2);
  CHECK(shell(tool() + " solve-polygon /nonexistent.json").code == 2);
  CHECK(shell(tool() + " frobnicate 2>/dev/null").code == 2);

  const Run env = shell("INSCRIBE_EPS=1e-10 " + tool() + " solve-polygon " + inst.string());
  CHECK(json::parse(env.out)["tolerances"]["eps"] == 1e-10);
  const Run flag = shell("INSCRIBE_EPS=1e-10 " + tool() + " --eps 1e-8 solve-polygon " + inst.string());
  CHECK(json::parse(flag.out)["tolerances"]["eps"] == 1e-8);

  const auto svg = scratch("bin.svg");
  const Run render = shell(tool() + " solve-polygon " + inst.string() + " | " + tool() + " render -o " + svg.string());
  CHECK(render.code == 0);
  CHECK(json::parse(render.out)["polygons"] == 6);
}
