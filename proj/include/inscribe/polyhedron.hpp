#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "inscribe/geom.hpp"
#include "inscribe/polygon_solver.hpp"

namespace inscribe {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Point3 operator+(Point3 p, Point3 q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
  friend constexpr Point3 operator-(Point3 p, Point3 q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
  friend constexpr Point3 operator*(double s, Point3 p) { return {s * p.x, s * p.y, s * p.z}; }
  friend constexpr Point3 operator/(Point3 p, double s) { return {p.x / s, p.y / s, p.z / s}; }
  friend constexpr bool operator==(Point3, Point3) = default;
};

constexpr double dot(Point3 p, Point3 q) { return p.x * q.x + p.y * q.y + p.z * q.z; }
constexpr Point3 cross(Point3 p, Point3 q) {
  return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}
inline double norm(Point3 p) { return std::sqrt(dot(p, p)); }
inline double distance(Point3 p, Point3 q) { return norm(p - q); }

/// 1-skeleton with faces. Edges run from the lower to the higher vertex index and
/// a parameter t on an edge is measured in that direction. Faces are listed
/// counterclockwise seen from outside.
struct PolyhedronGraph {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<int>> faces;
  std::vector<std::vector<int>> edge_faces;  // parallel to edges

  /// Index of edge {u, v}, or -1.
  int edge_index(int u, int v) const;
};

/// Derives edges and edge-face incidence from the face cycles. Throws
/// InvalidGraph on out-of-range indices or faces with fewer than 3 vertices.
PolyhedronGraph make_graph(std::vector<Point3> vertices, std::vector<std::vector<int>> faces);

struct GraphReport {
  bool planar = true;
  bool convex_faces = true;
  bool manifold = true;  // every edge on exactly two faces
  int euler = 0;
  std::vector<int> nonplanar_faces;
  std::vector<int> nonconvex_faces;
  std::vector<int> bad_edges;
  std::vector<std::string> violations;
  bool ok() const { return planar && convex_faces && manifold; }
};

GraphReport validate_graph(const PolyhedronGraph& g, double eps = 1e-9);

struct ParityReport {
  std::vector<int> face_degree;
  bool all_even = true;
};

ParityReport parity_check(const PolyhedronGraph& g);

/// Inner polygon per face, in the face's vertex order.
using GammaSpec = std::vector<std::vector<Point3>>;

/// Orthonormal frame of a face: origin at its first vertex, u along its first
/// edge, w = n x u with n the outward normal.
struct FaceFrame {
  Point3 origin, u, w, normal;
  Point2 to_plane(Point3 p) const { return {dot(p - origin, u), dot(p - origin, w)}; }
  Point3 to_space(Point2 p) const { return origin + p.x * u + p.y * w; }
  double height(Point3 p) const { return dot(p - origin, normal); }
};

FaceFrame face_frame(const PolyhedronGraph& g, std::size_t face);

struct FaceInstance {
  FaceFrame frame;
  ConvexPolygon outer;
  std::vector<Point2> inner;
};

/// Throws OffPlane when a gamma point leaves the face plane.
FaceInstance face_instance(const PolyhedronGraph& g, std::size_t face, const GammaSpec& gamma,
                           double eps = 1e-9);

struct InscribedGraphSolution {
  std::vector<double> edge_params;   // per edge, along the low-to-high orientation
  std::vector<int> per_face_choice;  // index into the face's planar solution list
};

struct GraphSolveResult {
  std::vector<InscribedGraphSolution> solutions;
  std::vector<SolutionSet> face_solutions;
  std::vector<int> unsolvable_faces;
  bool bound_satisfied = true;
};

/// Per-face planar solves (in parallel), then a backtracking search over faces
/// in breadth-first order for assignments that agree on every shared edge.
GraphSolveResult solve_graph(const PolyhedronGraph& g, const GammaSpec& gamma, const Tolerances& tol = {});

/// Parameter that a face's planar solution puts on each of its edges.
std::vector<std::pair<int, double>> face_edge_params(const PolyhedronGraph& g, std::size_t face,
                                                     const SolutionPolygon& sol);

PolyhedronGraph make_tetrahedron();
PolyhedronGraph make_cube();
PolyhedronGraph make_octahedron();
/// count octahedra stacked face to face, each glued on the face opposite the
/// previous gluing; the shared faces are removed.
PolyhedronGraph make_glued_octahedra(int count);
/// The even-degree unit-edge deltahedra with 10 and 11 vertices.
PolyhedronGraph make_even_deltahedron(int vertices);

/// Inner polygon on each regular face at the regular-family height, one point on
/// every apothem.
GammaSpec example1_gamma(const PolyhedronGraph& g);

struct OctahedronExample {
  PolyhedronGraph graph;
  GammaSpec gamma;
  std::vector<InscribedGraphSolution> betas;
};

OctahedronExample make_octahedron_example();

namespace reference {

GraphSolveResult solve_graph(const PolyhedronGraph& g, const GammaSpec& gamma, const Tolerances& tol = {});

}  // namespace reference

}  // namespace inscribe
