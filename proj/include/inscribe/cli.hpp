#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "inscribe/geom.hpp"
#include "inscribe/polyhedron.hpp"
#include "inscribe/tolerance.hpp"

namespace inscribe::cli {

inline constexpr const char* kSchema = "inscribe/1";
inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;

struct PolygonPayload {
  std::vector<Point2> outer;
  std::vector<Point2> inner;
  friend bool operator==(const PolygonPayload&, const PolygonPayload&) = default;
};

struct PolyhedronPayload {
  std::vector<Point3> vertices;
  std::vector<std::vector<int>> faces;
  std::vector<std::vector<Point3>> gamma;
  friend bool operator==(const PolyhedronPayload&, const PolyhedronPayload&) = default;
};

// Lines are kept as written, a x + b y + c = 0, so documents round-trip exactly.
struct GeneralizedPayload {
  std::vector<std::array<double, 3>> lines;
  std::vector<Point2> points;
  friend bool operator==(const GeneralizedPayload&, const GeneralizedPayload&) = default;
};

struct ConicChainPayload {
  std::vector<std::array<double, 3>> lines;
  std::vector<Point2> centers;
  friend bool operator==(const ConicChainPayload&, const ConicChainPayload&) = default;
};

using Payload = std::variant<PolygonPayload, PolyhedronPayload, GeneralizedPayload, ConicChainPayload>;

struct InstanceDocument {
  Payload payload;
  std::map<std::string, std::string> metadata;

  std::string kind() const;
  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

/// Strict reader: throws Error(ParseError) on malformed JSON or a payload that
/// does not match its kind. Unknown top-level keys are ignored.
InstanceDocument instance_from_json(const nlohmann::json& j);
InstanceDocument parse_instance(const std::string& text);
nlohmann::json to_json(const InstanceDocument& doc);
std::string emit(const nlohmann::json& j);

struct RunOptions {
  Tolerances tol;
  bool oracle = false;
  std::size_t oracle_grid = 10000;
  int samples = 24;
  bool construct = false;
  int shift = 0;            // conic-locus on a polygon document
  std::size_t target = 0;   // conic-locus on a polygon document
  char axis = 'z';          // render: projection direction for polyhedra
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string out;
};

CommandOutput cmd_solve_polygon(const std::string& input, const RunOptions& opt);
CommandOutput cmd_solve_polyhedron(const std::string& input, const RunOptions& opt);
CommandOutput cmd_gen_regular(int n, double a, double phase, const RunOptions& opt);
/// solid: octahedron, tetrahedron, cube, deltahedron10, deltahedron11. glued > 1
/// stacks octahedra instead.
CommandOutput cmd_gen_octahedron(const std::string& solid, int glued, const RunOptions& opt);
CommandOutput cmd_conic_locus(const std::string& input, const RunOptions& opt);
CommandOutput cmd_enumerate_generalized(const std::string& input, const RunOptions& opt);
/// Accepts an instance or a result document and writes an SVG to `path`.
CommandOutput cmd_render(const std::string& input, const std::string& path, const RunOptions& opt);

/// SVG text for a document; the same bytes cmd_render writes.
std::string render_svg(const nlohmann::json& doc, char axis);

/// Machine-readable error object for exit code 2 or 3.
CommandOutput error_output(int exit_code, const std::string& code, const std::string& message);

}  // namespace inscribe::cli
