#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "inscribe/cli.hpp"
#include "inscribe/error.hpp"

namespace inscribe::cli {

using nlohmann::json;

namespace {

constexpr const char* kOuterColor = "#000000";
constexpr const char* kInnerColor = "#d62728";
constexpr const char* kSolutionColors[] = {"#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd"};
constexpr double kCanvas = 800.0;

enum class Tag { Polygon, Polyline, Circle };

struct Shape {
  Tag tag;
  std::vector<Point2> pts;
  const char* color;
  double width;
};

Point2 read2(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::vector<Point2> read_list(const json& j) {
  std::vector<Point2> out;
  for (const json& e : j) out.push_back(read2(e));
  return out;
}

Point2 project(Point3 p, char axis) {
  switch (axis) {
    case 'x':
      return {p.y, p.z};
    case 'y':
      return {p.x, p.z};
    case 'z':
      return {p.x, p.y};
    default:
      throw Error(ErrorCode::InvalidArgument, std::string("projection axis must be x, y or z"));
  }
}

std::string fmt(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void polygon_shapes(const PolygonPayload& p, const json& doc, std::vector<Shape>& out) {
  out.push_back({Tag::Polygon, p.outer, kOuterColor, 2.0});
  if (doc.contains("solutions")) {
    std::size_t i = 0;
    for (const json& s : doc.at("solutions")) {
      out.push_back({Tag::Polygon, read_list(s.at("vertices")), kSolutionColors[i++ % 4], 1.5});
    }
  }
  out.push_back({Tag::Polygon, p.inner, kInnerColor, 1.5});
}

void polyhedron_shapes(const PolyhedronPayload& p, const json& doc, char axis, std::vector<Shape>& out) {
  const PolyhedronGraph g = make_graph(p.vertices, p.faces);
  for (const auto& face : g.faces) {
    std::vector<Point2> v;
    for (int i : face) v.push_back(project(g.vertices[i], axis));
    out.push_back({Tag::Polygon, v, kOuterColor, 1.5});
  }
  if (doc.contains("solutions")) {
    std::size_t i = 0;
    for (const json& s : doc.at("solutions")) {
      const std::vector<double> t = s.at("edge_params").get<std::vector<double>>();
      if (t.size() != g.edges.size()) throw Error(ErrorCode::InvalidArgument, "edge_params do not match the graph");
      for (const auto& face : g.faces) {
        std::vector<Point2> v;
        for (std::size_t k = 0; k < face.size(); ++k) {
          const int e = g.edge_index(face[k], face[(k + 1) % face.size()]);
          const auto [lo, hi] = g.edges[e];
          v.push_back(project(g.vertices[lo] + t[e] * (g.vertices[hi] - g.vertices[lo]), axis));
        }
        out.push_back({Tag::Polygon, v, kSolutionColors[i % 4], 1.0});
      }
      ++i;
    }
  }
  for (const auto& gam : p.gamma) {
    std::vector<Point2> v;
    for (const Point3& q : gam) v.push_back(project(q, axis));
    out.push_back({Tag::Polygon, v, kInnerColor, 1.0});
  }
}

// Locus samples can run off towards infinity near the chain's poles; those are
// cut out and the polyline is split there.
void locus_shapes(const json& doc, std::vector<Shape>& out) {
  const std::vector<Point2> centers = read_list(doc.at("chain").at("centers"));
  Point2 m;
  for (const Point2& c : centers) m = m + c;
  m = m / static_cast<double>(centers.size());
  double reach = 0.0;
  for (const Point2& c : centers) reach = std::max(reach, distance(c, m));
  std::vector<Point2> xs;
  for (const json& s : doc.at("samples")) xs.push_back(read2(s.at("x")));
  std::vector<double> d;
  for (const Point2& x : xs) d.push_back(distance(x, m));
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  const double limit = 4.0 * std::max(reach, d[d.size() / 2]);

  std::vector<Point2> run;
  auto flush = [&] {
    if (run.size() >= 2) out.push_back({Tag::Polyline, run, kSolutionColors[0], 1.5});
    run.clear();
  };
  for (const Point2& x : xs) {
    if (distance(x, m) > limit) {
      flush();
    } else {
      run.push_back(x);
    }
  }
  flush();
  for (const Point2& c : centers) out.push_back({Tag::Circle, {c}, kInnerColor, 0.0});
}

}  // namespace

std::string render_svg(const json& doc, char axis) {
  const json& inst_json = doc.contains("instance") ? doc.at("instance") : doc;
  const InstanceDocument inst = instance_from_json(inst_json);
  const std::string kind = doc.value("kind", std::string());

  std::vector<Shape> shapes;
  if (kind == "conic-locus-result") {
    if (const auto* p = std::get_if<PolygonPayload>(&inst.payload)) {
      shapes.push_back({Tag::Polygon, p->outer, kOuterColor, 2.0});
    }
    locus_shapes(doc, shapes);
  } else if (const auto* p = std::get_if<PolygonPayload>(&inst.payload)) {
    polygon_shapes(*p, doc, shapes);
  } else if (const auto* p = std::get_if<PolyhedronPayload>(&inst.payload)) {
    polyhedron_shapes(*p, doc, axis, shapes);
  } else if (const auto* p = std::get_if<GeneralizedPayload>(&inst.payload)) {
    if (doc.contains("solutions")) {
      std::size_t i = 0;
      for (const json& s : doc.at("solutions")) shapes.push_back({Tag::Polygon, read_list(s), kSolutionColors[i++ % 4], 1.5});
    }
    for (const Point2& c : p->points) shapes.push_back({Tag::Circle, {c}, kInnerColor, 0.0});
  } else {
    for (const Point2& c : std::get<ConicChainPayload>(inst.payload).centers) {
      shapes.push_back({Tag::Circle, {c}, kInnerColor, 0.0});
    }
  }

  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (const Shape& s : shapes) {
    for (const Point2& q : s.pts) {
      lo_x = std::min(lo_x, q.x);
      lo_y = std::min(lo_y, q.y);
      hi_x = std::max(hi_x, q.x);
      hi_y = std::max(hi_y, q.y);
    }
  }
  if (!std::isfinite(lo_x)) lo_x = lo_y = hi_x = hi_y = 0.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double margin = 0.05 * span;
  const double scale = kCanvas / (span + 2.0 * margin);
  const double width = (hi_x - lo_x + 2.0 * margin) * scale;
  const double height = (hi_y - lo_y + 2.0 * margin) * scale;
  auto map = [&](Point2 q) { return Point2{(q.x - lo_x + margin) * scale, (hi_y - q.y + margin) * scale}; };

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const Shape& s : shapes) {
    if (s.tag == Tag::Circle) {
      const Point2 q = map(s.pts[0]);
      svg += "<circle cx=\"" + fmt(q.x) + "\" cy=\"" + fmt(q.y) + "\" r=\"4.000000\" fill=\"" + s.color + "\"/>\n";
      continue;
    }
    std::string points;
    for (const Point2& p : s.pts) {
      const Point2 q = map(p);
      if (!points.empty()) points += ' ';
      points += fmt(q.x) + "," + fmt(q.y);
    }
    svg += std::string(s.tag == Tag::Polygon ? "<polygon " : "<polyline ") + "points=\"" + points +
           "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" + fmt(s.width) + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace inscribe::cli
