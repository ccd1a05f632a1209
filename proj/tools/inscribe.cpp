#include <cstdio>
#include <iostream>
#include <iterator>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "inscribe/cli.hpp"
#include "inscribe/error.hpp"

using namespace inscribe;
using namespace inscribe::cli;

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygons inscribed in one polygon and circumscribed about another"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunOptions opt;
  opt.tol = tolerances_from_env();
  app.add_option("--eps", opt.tol.eps, "geometric tolerance (default 1e-9, or INSCRIBE_EPS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--match-tol", opt.tol.match, "tolerance for merging solutions (default 1e-6)")
      ->check(CLI::PositiveNumber);
  app.add_option("--stitch-tol", opt.tol.stitch, "shared-edge tolerance for polyhedra (default 1e-7)")
      ->check(CLI::PositiveNumber);

  std::string input;
  auto* solve_polygon = app.add_subcommand("solve-polygon", "all inscribed-circumscribed polygons of an instance");
  solve_polygon->add_option("input", input, "instance document (default stdin)");
  solve_polygon->add_flag("--oracle", opt.oracle, "cross-check every shift with a grid scan");
  solve_polygon->add_option("--grid", opt.oracle_grid, "grid size for --oracle")->check(CLI::Range(100, 100000000));

  auto* solve_polyhedron = app.add_subcommand("solve-polyhedron", "inscribed graphs of a polyhedron");
  solve_polyhedron->add_option("input", input, "instance document (default stdin)");

  int n = 3;
  double a = 1.0, phase = 0.0;
  auto* gen_regular = app.add_subcommand("gen-regular", "regular n-gon instance with its four known solutions");
  gen_regular->add_option("-n,--n", n, "number of sides")->required();
  gen_regular->add_option("-a,--a", a, "half the side length");
  gen_regular->add_option("--phase", phase, "rotation in radians");
  gen_regular->add_flag("--construct", opt.construct, "include the ruler-and-compass trace");

  std::string solid = "octahedron";
  int glued = 1;
  auto* gen_oct = app.add_subcommand("gen-octahedron", "polyhedron instance with per-face regular inner polygons");
  gen_oct->add_option("--solid", solid, "octahedron, tetrahedron, cube, deltahedron10 or deltahedron11");
  gen_oct->add_option("--glued", glued, "stack this many octahedra face to face");

  auto* locus = app.add_subcommand("conic-locus", "locus of the moving chain point and its conic");
  locus->add_option("input", input, "conic-chain or polygon document (default stdin)");
  locus->add_option("--samples", opt.samples, "number of chain samples");
  locus->add_option("--shift", opt.shift, "shift for polygon documents");
  locus->add_option("--target", opt.target, "first side of the chain for polygon documents");

  auto* gen = app.add_subcommand("enumerate-generalized", "polygons with vertices on lines and sides through points");
  gen->add_option("input", input, "generalized document (default stdin)");

  std::string output;
  std::string axis = "z";
  auto* render = app.add_subcommand("render", "write an SVG figure of an instance or result document");
  render->add_option("input", input, "document (default stdin)");
  render->add_option("-o,--output", output, "SVG path")->required();
  render->add_option("--axis", axis, "projection axis for polyhedra")->check(CLI::IsMember({"x", "y", "z"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  opt.axis = axis[0];

  CommandOutput result;
  const bool reads_input = !gen_regular->parsed() && !gen_oct->parsed();
  std::string text;
  if (reads_input && !read_input(input, text)) {
    result = error_output(kExitInput, std::string(to_string(ErrorCode::IoError)), "cannot read " + input);
  } else if (solve_polygon->parsed()) {
    result = cmd_solve_polygon(text, opt);
  } else if (solve_polyhedron->parsed()) {
    result = cmd_solve_polyhedron(text, opt);
  } else if (gen_regular->parsed()) {
    result = cmd_gen_regular(n, a, phase, opt);
  } else if (gen_oct->parsed()) {
    result = cmd_gen_octahedron(solid, glued, opt);
  } else if (locus->parsed()) {
    result = cmd_conic_locus(text, opt);
  } else if (gen->parsed()) {
    result = cmd_enumerate_generalized(text, opt);
  } else {
    result = cmd_render(text, output, opt);
  }
  std::fwrite(result.out.data(), 1, result.out.size(), stdout);
  return result.exit_code;
}
