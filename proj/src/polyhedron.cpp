#include "inscribe/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "inscribe/error.hpp"
#include "inscribe/regular_examples.hpp"

namespace inscribe {

namespace {

Point3 unit(Point3 p) { return p / norm(p); }

Point3 newell_normal(const PolyhedronGraph& g, const std::vector<int>& face) {
  Point3 n;
  for (std::size_t i = 0; i < face.size(); ++i) {
    const Point3 p = g.vertices[face[i]];
    const Point3 q = g.vertices[face[(i + 1) % face.size()]];
    n = n + Point3{(p.y - q.y) * (p.z + q.z), (p.z - q.z) * (p.x + q.x), (p.x - q.x) * (p.y + q.y)};
  }
  return n;
}

double face_diameter(const PolyhedronGraph& g, const std::vector<int>& face) {
  double d = 0.0;
  for (int i : face) {
    for (int j : face) d = std::max(d, distance(g.vertices[i], g.vertices[j]));
  }
  return d;
}

/// Reverses faces of a convex solid whose normal points inward.
std::vector<std::vector<int>> orient_outward(const std::vector<Point3>& v, std::vector<std::vector<int>> faces) {
  Point3 c;
  for (const Point3& p : v) c = c + p;
  c = c / static_cast<double>(v.size());
  PolyhedronGraph tmp;
  tmp.vertices = v;
  for (auto& f : faces) {
    Point3 fc;
    for (int i : f) fc = fc + v[i];
    fc = fc / static_cast<double>(f.size());
    if (dot(newell_normal(tmp, f), fc - c) < 0.0) std::reverse(f.begin(), f.end());
  }
  return faces;
}

std::vector<int> face_order(const PolyhedronGraph& g) {
  const std::size_t nf = g.faces.size();
  std::vector<int> order;
  std::vector<bool> seen(nf, false);
  for (std::size_t root = 0; root < nf; ++root) {
    if (seen[root]) continue;
    std::deque<int> queue{static_cast<int>(root)};
    seen[root] = true;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      order.push_back(f);
      const auto& face = g.faces[f];
      for (std::size_t s = 0; s < face.size(); ++s) {
        const int e = g.edge_index(face[s], face[(s + 1) % face.size()]);
        for (int h : g.edge_faces[e]) {
          if (!seen[h]) {
            seen[h] = true;
            queue.push_back(h);
          }
        }
      }
    }
  }
  return order;
}

/// 2-colouring of the face adjacency graph; empty when it has an odd cycle.
std::vector<int> face_two_coloring(const PolyhedronGraph& g) {
  std::vector<int> color(g.faces.size(), -1);
  for (int f : face_order(g)) {
    if (color[f] < 0) color[f] = 0;
    const auto& face = g.faces[f];
    for (std::size_t s = 0; s < face.size(); ++s) {
      for (int h : g.edge_faces[g.edge_index(face[s], face[(s + 1) % face.size()])]) {
        if (h == f) continue;
        if (color[h] < 0) color[h] = 1 - color[f];
        if (color[h] == color[f]) return {};
      }
    }
  }
  return color;
}

std::vector<double> stitch_edge_params(const PolyhedronGraph& g, const std::vector<int>& color,
                                       bool flip, double t) {
  std::vector<double> params(g.edges.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const bool near = (color[f] == 0) != flip;
    const auto& face = g.faces[f];
    for (std::size_t s = 0; s < face.size(); ++s) {
      const int u = face[s];
      const int v = face[(s + 1) % face.size()];
      const double side_t = near ? t : 1.0 - t;
      params[g.edge_index(u, v)] = u < v ? side_t : 1.0 - side_t;
    }
  }
  return params;
}

GraphSolveResult stitch(const PolyhedronGraph& g, std::vector<SolutionSet> per_face, const Tolerances& tol) {
  GraphSolveResult res;
  res.face_solutions = std::move(per_face);
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    if (res.face_solutions[f].solutions.empty()) res.unsolvable_faces.push_back(static_cast<int>(f));
  }
  if (!res.unsolvable_faces.empty()) return res;

  std::vector<std::vector<std::vector<std::pair<int, double>>>> induced(g.faces.size());
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    for (const SolutionPolygon& sol : res.face_solutions[f].solutions) {
      induced[f].push_back(face_edge_params(g, f, sol));
    }
  }

  const std::vector<int> order = face_order(g);
  std::vector<double> edge(g.edges.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<int> choice(g.faces.size(), -1);
  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    if (depth == order.size()) {
      res.solutions.push_back({edge, choice});
      return;
    }
    const int f = order[depth];
    for (std::size_t c = 0; c < induced[f].size(); ++c) {
      bool fits = true;
      for (const auto& [e, t] : induced[f][c]) {
        if (!std::isnan(edge[e]) && !(std::abs(edge[e] - t) < tol.stitch)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      std::vector<int> assigned;
      for (const auto& [e, t] : induced[f][c]) {
        if (std::isnan(edge[e])) {
          edge[e] = t;
          assigned.push_back(e);
        }
      }
      choice[f] = static_cast<int>(c);
      search(depth + 1);
      choice[f] = -1;
      for (int e : assigned) edge[e] = std::numeric_limits<double>::quiet_NaN();
    }
  };
  search(0);
  res.bound_satisfied = res.solutions.size() <= 4;
  return res;
}

}  // namespace

int PolyhedronGraph::edge_index(int u, int v) const {
  const std::array<int, 2> key{std::min(u, v), std::max(u, v)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  return it != edges.end() && *it == key ? static_cast<int>(it - edges.begin()) : -1;
}

PolyhedronGraph make_graph(std::vector<Point3> vertices, std::vector<std::vector<int>> faces) {
  PolyhedronGraph g;
  g.vertices = std::move(vertices);
  g.faces = std::move(faces);
  const int nv = static_cast<int>(g.vertices.size());
  std::map<std::array<int, 2>, std::vector<int>> incidence;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const auto& face = g.faces[f];
    if (face.size() < 3) throw Error(ErrorCode::InvalidGraph, "face " + std::to_string(f) + " has fewer than 3 vertices");
    for (std::size_t s = 0; s < face.size(); ++s) {
      const int u = face[s];
      const int v = face[(s + 1) % face.size()];
      if (u < 0 || v < 0 || u >= nv || v >= nv || u == v) {
        throw Error(ErrorCode::InvalidGraph, "face " + std::to_string(f) + " has a bad vertex index");
      }
      incidence[{std::min(u, v), std::max(u, v)}].push_back(static_cast<int>(f));
    }
  }
  for (auto& [e, fs] : incidence) {
    g.edges.push_back(e);
    g.edge_faces.push_back(std::move(fs));
  }
  return g;
}

GraphReport validate_graph(const PolyhedronGraph& g, double eps) {
  GraphReport r;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const auto& face = g.faces[f];
    const Point3 n = newell_normal(g, face);
    const double scale = std::max(1.0, face_diameter(g, face));
    bool planar = norm(n) > 0.0;
    if (planar) {
      const Point3 un = unit(n);
      for (int v : face) {
        planar = planar && std::abs(dot(g.vertices[v] - g.vertices[face[0]], un)) <= eps * scale;
      }
    }
    if (!planar) {
      r.planar = false;
      r.nonplanar_faces.push_back(static_cast<int>(f));
      r.violations.push_back("face " + std::to_string(f) + " is not planar");
      continue;
    }
    const FaceFrame frame = face_frame(g, f);
    std::vector<Point2> poly;
    for (int v : face) poly.push_back(frame.to_plane(g.vertices[v]));
    if (!is_strictly_convex_ccw(poly, eps)) {
      r.convex_faces = false;
      r.nonconvex_faces.push_back(static_cast<int>(f));
      r.violations.push_back("face " + std::to_string(f) + " is not strictly convex");
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    bool ok = g.edge_faces[e].size() == 2;
    if (ok) {
      // The two faces must traverse the edge in opposite directions.
      int dir_sum = 0;
      for (int f : g.edge_faces[e]) {
        const auto& face = g.faces[f];
        for (std::size_t s = 0; s < face.size(); ++s) {
          const int u = face[s];
          const int v = face[(s + 1) % face.size()];
          if (u == g.edges[e][0] && v == g.edges[e][1]) ++dir_sum;
          if (v == g.edges[e][0] && u == g.edges[e][1]) --dir_sum;
        }
      }
      ok = dir_sum == 0;
    }
    if (!ok) {
      r.manifold = false;
      r.bad_edges.push_back(static_cast<int>(e));
      r.violations.push_back("edge " + std::to_string(g.edges[e][0]) + "-" + std::to_string(g.edges[e][1]) +
                             " is not shared by exactly two consistently oriented faces");
    }
  }
  r.euler = static_cast<int>(g.vertices.size()) - static_cast<int>(g.edges.size()) + static_cast<int>(g.faces.size());
  return r;
}

ParityReport parity_check(const PolyhedronGraph& g) {
  ParityReport r;
  r.face_degree.assign(g.vertices.size(), 0);
  for (const auto& face : g.faces) {
    for (int v : face) ++r.face_degree[v];
  }
  r.all_even = std::all_of(r.face_degree.begin(), r.face_degree.end(), [](int d) { return d % 2 == 0; });
  return r;
}

FaceFrame face_frame(const PolyhedronGraph& g, std::size_t face) {
  const auto& f = g.faces.at(face);
  FaceFrame fr;
  fr.origin = g.vertices[f[0]];
  fr.normal = unit(newell_normal(g, f));
  const Point3 edge = g.vertices[f[1]] - fr.origin;
  fr.u = unit(edge - dot(edge, fr.normal) * fr.normal);
  fr.w = cross(fr.normal, fr.u);
  return fr;
}

FaceInstance face_instance(const PolyhedronGraph& g, std::size_t face, const GammaSpec& gamma, double eps) {
  const FaceFrame frame = face_frame(g, face);
  const auto& f = g.faces[face];
  const double scale = std::max(1.0, face_diameter(g, f));
  std::vector<Point2> outer;
  for (int v : f) outer.push_back(frame.to_plane(g.vertices[v]));
  std::vector<Point2> inner;
  for (const Point3& p : gamma.at(face)) {
    if (std::abs(frame.height(p)) > eps * scale) {
      throw Error(ErrorCode::OffPlane, "gamma point is off the plane of face " + std::to_string(face));
    }
    inner.push_back(frame.to_plane(p));
  }
  return {frame, ConvexPolygon(std::move(outer), eps), std::move(inner)};
}

std::vector<std::pair<int, double>> face_edge_params(const PolyhedronGraph& g, std::size_t face,
                                                     const SolutionPolygon& sol) {
  const auto& f = g.faces[face];
  std::vector<std::pair<int, double>> out;
  for (std::size_t s = 0; s < f.size(); ++s) {
    const int u = f[s];
    const int v = f[(s + 1) % f.size()];
    out.emplace_back(g.edge_index(u, v), u < v ? sol.params[s] : 1.0 - sol.params[s]);
  }
  return out;
}

GraphSolveResult solve_graph(const PolyhedronGraph& g, const GammaSpec& gamma, const Tolerances& tol) {
  if (gamma.size() != g.faces.size()) throw Error(ErrorCode::InvalidArgument, "gamma needs one polygon per face");
  std::vector<SolutionSet> per_face(g.faces.size());
  detail::parallel_for(g.faces.size(), [&](std::size_t f) {
    const FaceInstance fi = face_instance(g, f, gamma, tol.eps);
    per_face[f] = solve_all(fi.outer, fi.inner, tol);
  });
  return stitch(g, std::move(per_face), tol);
}

namespace reference {

GraphSolveResult solve_graph(const PolyhedronGraph& g, const GammaSpec& gamma, const Tolerances& tol) {
  if (gamma.size() != g.faces.size()) throw Error(ErrorCode::InvalidArgument, "gamma needs one polygon per face");
  std::vector<SolutionSet> per_face;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const FaceInstance fi = face_instance(g, f, gamma, tol.eps);
    per_face.push_back(inscribe::reference::solve_all(fi.outer, fi.inner, tol));
  }
  return stitch(g, std::move(per_face), tol);
}

}  // namespace reference

PolyhedronGraph make_tetrahedron() {
  std::vector<Point3> v{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<std::vector<int>> f{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  return make_graph(v, orient_outward(v, f));
}

PolyhedronGraph make_cube() {
  std::vector<Point3> v;
  for (int i = 0; i < 8; ++i) v.push_back({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0});
  std::vector<std::vector<int>> f;
  for (int axis = 0; axis < 3; ++axis) {
    const int bit = 1 << axis;
    const int p = 1 << ((axis + 1) % 3);
    const int q = 1 << ((axis + 2) % 3);
    for (int side : {0, bit}) f.push_back({side, side | p, side | p | q, side | q});
  }
  return make_graph(v, orient_outward(v, f));
}

PolyhedronGraph make_octahedron() {
  std::vector<Point3> v{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<std::vector<int>> f;
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      for (int sz : {1, -1}) {
        const int x = sx > 0 ? 0 : 1;
        const int y = sy > 0 ? 2 : 3;
        const int z = sz > 0 ? 4 : 5;
        if (sx * sy * sz > 0) {
          f.push_back({x, y, z});
        } else {
          f.push_back({x, z, y});
        }
      }
    }
  }
  return make_graph(v, orient_outward(v, f));
}

PolyhedronGraph make_glued_octahedra(int count) {
  if (count < 1 || count > 8) throw Error(ErrorCode::InvalidArgument, "glued octahedra count must be in 1..8");
  const PolyhedronGraph base = make_octahedron();
  const auto antipode = [](int local) { return local ^ 1; };

  std::vector<Point3> vertices = base.vertices;
  std::vector<std::array<int, 6>> ids{{0, 1, 2, 3, 4, 5}};
  std::vector<std::vector<std::vector<int>>> faces{base.faces};
  std::array<int, 3> glue{0, 2, 4};

  auto same_face = [](const std::vector<int>& f, const std::array<int, 3>& g) {
    std::array<int, 3> a{f[0], f[1], f[2]};
    std::array<int, 3> b = g;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };

  for (int k = 1; k < count; ++k) {
    const auto& prev = ids.back();
    const std::array<int, 3> shared{prev[glue[0]], prev[glue[1]], prev[glue[2]]};
    const Point3 q = vertices[shared[0]];
    const Point3 n = unit(cross(vertices[shared[1]] - q, vertices[shared[2]] - q));

    std::array<int, 6> next{};
    for (int local = 0; local < 6; ++local) {
      if (std::find(glue.begin(), glue.end(), local) != glue.end()) {
        next[local] = prev[local];
      } else {
        const Point3 p = vertices[prev[local]];
        vertices.push_back(p - 2.0 * dot(p - q, n) * n);
        next[local] = static_cast<int>(vertices.size()) - 1;
      }
    }
    // Each reflection flips orientation relative to the labelled template.
    const bool mirrored = k % 2 == 1;
    std::vector<std::vector<int>> image;
    for (const auto& f : base.faces) {
      if (mirrored) {
        image.push_back({next[f[2]], next[f[1]], next[f[0]]});
      } else {
        image.push_back({next[f[0]], next[f[1]], next[f[2]]});
      }
    }

    auto& last = faces.back();
    last.erase(std::remove_if(last.begin(), last.end(), [&](const auto& f) { return same_face(f, shared); }), last.end());
    image.erase(std::remove_if(image.begin(), image.end(), [&](const auto& f) { return same_face(f, shared); }), image.end());
    faces.push_back(std::move(image));
    ids.push_back(next);
    glue = {antipode(glue[0]), antipode(glue[1]), antipode(glue[2])};
  }

  std::vector<std::vector<int>> all;
  for (const auto& block : faces) all.insert(all.end(), block.begin(), block.end());
  return make_graph(std::move(vertices), std::move(all));
}

PolyhedronGraph make_even_deltahedron(int vertices) {
  if (vertices == 10) {
    // D2d, degrees 4^6 6^4.
    const double al = 1.1977999375209950101, be = 0.61389126000332750334, rh = 0.811819349559721059;
    const double ga = 0.34150165107384532836, si = 0.51648160144159558607;
    return make_graph({{-be, 0, -rh}, {-al, 0, 0}, {-ga, -si, 0}, {be, rh, 0}, {be, -rh, 0},
                       {ga, 0, si}, {ga, 0, -si}, {-be, 0, rh}, {-ga, si, 0}, {al, 0, 0}},
                      {{4, 2, 6}, {2, 4, 5}, {8, 0, 1}, {5, 8, 7}, {4, 6, 9}, {3, 9, 6}, {9, 3, 5}, {0, 8, 6},
                       {5, 3, 8}, {1, 2, 7}, {0, 6, 2}, {6, 8, 3}, {2, 1, 0}, {9, 5, 4}, {5, 7, 2}, {1, 7, 8}});
  }
  if (vertices == 11) {
    // D3h, degrees 4^6 6^5.
    const double r1 = 0.68481863029144352115, p = 0.97349376488625640341, q = 0.4867468824431282017;
    const double s = 0.84307033081725358248, h = 0.72871355387816905499, u = 0.34240931514572176058;
    const double w = 0.59307033081725358248;
    return make_graph({{r1, 0, 0}, {-p, 0, -0.5}, {q, s, -0.5}, {q, -s, 0.5}, {-p, 0, 0.5}, {0, 0, h},
                       {q, s, 0.5}, {0, 0, -h}, {-u, w, 0}, {-u, -w, 0}, {q, -s, -0.5}},
                      {{1, 8, 7}, {3, 9, 10}, {9, 5, 4}, {6, 8, 5}, {2, 7, 8}, {6, 5, 0}, {10, 7, 0}, {1, 9, 4}, {4, 8, 1},
                       {5, 9, 3}, {3, 0, 5}, {3, 10, 0}, {2, 0, 7}, {7, 9, 1}, {7, 10, 9}, {0, 2, 6}, {8, 6, 2}, {4, 5, 8}});
  }
  throw Error(ErrorCode::InvalidArgument, "even deltahedra are provided for 10 and 11 vertices only");
}

GammaSpec example1_gamma(const PolyhedronGraph& g) {
  GammaSpec gamma;
  for (const auto& face : g.faces) {
    const int n = static_cast<int>(face.size());
    Point3 c;
    double side = 0.0;
    for (int i = 0; i < n; ++i) {
      c = c + g.vertices[face[i]];
      side += distance(g.vertices[face[i]], g.vertices[face[(i + 1) % n]]);
    }
    c = c / static_cast<double>(n);
    const double a = side / (2.0 * n);
    const double h = f_height(n, a, a / 2.0);
    std::vector<Point3> inner;
    for (int i = 0; i < n; ++i) {
      const Point3 e = 0.5 * (g.vertices[face[i]] + g.vertices[face[(i + 1) % n]]);
      inner.push_back(e + h * unit(c - e));
    }
    gamma.push_back(std::move(inner));
  }
  return gamma;
}

OctahedronExample make_octahedron_example() {
  OctahedronExample ex;
  ex.graph = make_octahedron();
  ex.gamma = example1_gamma(ex.graph);
  const std::vector<int> color = face_two_coloring(ex.graph);
  const double c2 = std::cos(std::numbers::pi / 3.0) * std::cos(std::numbers::pi / 3.0);
  for (double t : {0.25, 1.0 / (2.0 * (1.0 + c2))}) {
    for (bool flip : {false, true}) ex.betas.push_back({stitch_edge_params(ex.graph, color, flip, t), {}});
  }
  return ex;
}

}  // namespace inscribe
