#include <cmath>

#include "inscribe/cli.hpp"
#include "inscribe/error.hpp"

namespace inscribe::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "number out of range");
  return v;
}

template <std::size_t N>
std::array<double, N> tuple_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) bad(where, "expected " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], where);
  return out;
}

Point2 point2(const json& j, const std::string& where) {
  const auto v = tuple_of<2>(j, where);
  return {v[0], v[1]};
}

Point3 point3(const json& j, const std::string& where) {
  const auto v = tuple_of<3>(j, where);
  return {v[0], v[1], v[2]};
}

std::vector<Point2> points2(const json& j, const std::string& where) {
  std::vector<Point2> out;
  std::size_t i = 0;
  for (const json& e : array_of(j, where)) out.push_back(point2(e, where + "[" + std::to_string(i++) + "]"));
  return out;
}

std::vector<Point3> points3(const json& j, const std::string& where) {
  std::vector<Point3> out;
  std::size_t i = 0;
  for (const json& e : array_of(j, where)) out.push_back(point3(e, where + "[" + std::to_string(i++) + "]"));
  return out;
}

std::vector<std::array<double, 3>> lines_of(const json& j, const std::string& where) {
  std::vector<std::array<double, 3>> out;
  std::size_t i = 0;
  for (const json& e : array_of(j, where)) {
    const std::string w = where + "[" + std::to_string(i++) + "]";
    const auto l = tuple_of<3>(e, w);
    if (l[0] == 0.0 && l[1] == 0.0) bad(w, "line needs a nonzero normal");
    out.push_back(l);
  }
  return out;
}

json to_json(Point2 p) { return json::array({p.x, p.y}); }
json to_json(Point3 p) { return json::array({p.x, p.y, p.z}); }

template <class T>
json list(const std::vector<T>& v) {
  json out = json::array();
  for (const T& e : v) out.push_back(to_json(e));
  return out;
}

json line_list(const std::vector<std::array<double, 3>>& lines) {
  json out = json::array();
  for (const auto& l : lines) out.push_back(json::array({l[0], l[1], l[2]}));
  return out;
}

PolygonPayload polygon_payload(const json& p) {
  PolygonPayload out{points2(field(p, "outer", "payload"), "payload.outer"),
                     points2(field(p, "inner", "payload"), "payload.inner")};
  if (out.outer.size() < 3) throw Error(ErrorCode::InvalidArgument, "polygon requires n >= 3");
  if (out.inner.size() != out.outer.size()) {
    throw Error(ErrorCode::InvalidArgument, "inner polygon must have as many points as the outer one");
  }
  return out;
}

PolyhedronPayload polyhedron_payload(const json& p) {
  PolyhedronPayload out;
  out.vertices = points3(field(p, "vertices", "payload"), "payload.vertices");
  std::size_t fi = 0;
  for (const json& f : array_of(field(p, "faces", "payload"), "payload.faces")) {
    const std::string w = "payload.faces[" + std::to_string(fi++) + "]";
    std::vector<int> face;
    for (const json& v : array_of(f, w)) {
      if (!v.is_number_integer()) bad(w, "expected vertex indices");
      face.push_back(v.get<int>());
    }
    out.faces.push_back(std::move(face));
  }
  std::size_t gi = 0;
  for (const json& g : array_of(field(p, "gamma", "payload"), "payload.gamma")) {
    out.gamma.push_back(points3(g, "payload.gamma[" + std::to_string(gi++) + "]"));
  }
  if (out.gamma.size() != out.faces.size()) throw Error(ErrorCode::InvalidArgument, "gamma needs one polygon per face");
  for (std::size_t f = 0; f < out.faces.size(); ++f) {
    if (out.gamma[f].size() != out.faces[f].size()) {
      throw Error(ErrorCode::InvalidArgument, "gamma polygon " + std::to_string(f) + " does not match its face");
    }
  }
  return out;
}

template <class P>
P chain_payload(const json& p, const char* points_key) {
  P out{lines_of(field(p, "lines", "payload"), "payload.lines"),
        points2(field(p, points_key, "payload"), std::string("payload.") + points_key)};
  const auto& pts = [&]() -> const std::vector<Point2>& {
    if constexpr (std::is_same_v<P, GeneralizedPayload>) {
      return out.points;
    } else {
      return out.centers;
    }
  }();
  if (out.lines.size() < 3) throw Error(ErrorCode::InvalidArgument, "chain requires n >= 3");
  if (pts.size() != out.lines.size()) throw Error(ErrorCode::InvalidArgument, "need one point per line");
  return out;
}

}  // namespace

std::string InstanceDocument::kind() const {
  static constexpr const char* kKinds[] = {"polygon", "polyhedron", "generalized", "conic-chain"};
  return kKinds[payload.index()];
}

InstanceDocument instance_from_json(const json& j) {
  if (!j.is_object()) bad("document", "expected an object");
  const json& schema = field(j, "schema", "document");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) bad("schema", std::string("expected \"") + kSchema + "\"");
  const json& kind = field(j, "kind", "document");
  if (!kind.is_string()) bad("kind", "expected a string");
  const json& p = field(j, "payload", "document");

  InstanceDocument doc;
  const std::string k = kind.get<std::string>();
  if (k == "polygon") {
    doc.payload = polygon_payload(p);
  } else if (k == "polyhedron") {
    doc.payload = polyhedron_payload(p);
  } else if (k == "generalized") {
    doc.payload = chain_payload<GeneralizedPayload>(p, "points");
  } else if (k == "conic-chain") {
    doc.payload = chain_payload<ConicChainPayload>(p, "centers");
  } else {
    bad("kind", "unknown kind \"" + k + "\"");
  }

  if (const auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) bad("metadata", "expected an object of strings");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) bad("metadata." + key, "expected a string");
      doc.metadata[key] = value.get<std::string>();
    }
  }
  return doc;
}

InstanceDocument parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

json to_json(const InstanceDocument& doc) {
  json payload;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PolygonPayload>) {
          payload = {{"outer", list(p.outer)}, {"inner", list(p.inner)}};
        } else if constexpr (std::is_same_v<P, PolyhedronPayload>) {
          json gamma = json::array();
          for (const auto& g : p.gamma) gamma.push_back(list(g));
          payload = {{"vertices", list(p.vertices)}, {"faces", p.faces}, {"gamma", gamma}};
        } else if constexpr (std::is_same_v<P, GeneralizedPayload>) {
          payload = {{"lines", line_list(p.lines)}, {"points", list(p.points)}};
        } else {
          payload = {{"lines", line_list(p.lines)}, {"centers", list(p.centers)}};
        }
      },
      doc.payload);
  json meta = json::object();
  for (const auto& [k, v] : doc.metadata) meta[k] = v;
  return {{"schema", kSchema}, {"kind", doc.kind()}, {"payload", payload}, {"metadata", meta}};
}

std::string emit(const json& j) { return j.dump(2) + "\n"; }

CommandOutput error_output(int exit_code, const std::string& code, const std::string& message) {
  const json j = {{"schema", kSchema}, {"error", {{"code", code}, {"message", message}}}};
  return {exit_code, emit(j)};
}

}  // namespace inscribe::cli
